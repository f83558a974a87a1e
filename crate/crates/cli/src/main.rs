//! `paut`: command-line front end for probautomata.

mod num;

use clap::{Args, Parser, Subcommand};
use probautomata::io::{self, Document};
use probautomata::languages::{
    definite_rep, enumerate, ergodic_test, extract_dfa, isolation_scan, member, shift_cutpoint, stability_check, IsolationStatus, Stability,
};
use probautomata::linear::{
    disting_degree, e_f_dimension, la_language_pa, la_to_pa_affine, la_to_rational_expr, reach_degree, realize, LaBinary, LaUnary,
    StringFunction,
};
use probautomata::sequences::transform;
use probautomata::words::{words_up_to, Alphabet, Word};
use probautomata::{Dfa, Error, GeneralPA, LinearAutomaton, MoorePA, Tolerances};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "paut", version, about = "Probabilistic and linear automata toolkit")]
struct Cli {
    /// Override every numeric tolerance with one value.
    #[arg(long, global = true, value_parser = num::parse)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load and validate a document; optionally write it back in canonical form.
    Validate {
        file: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a reaction or function value.
    React {
        file: PathBuf,
        /// Input word; "" or ε for the empty word.
        #[arg(long, conflicts_with = "max_len")]
        input: Option<String>,
        /// Output word for general automata; all outputs are listed when omitted.
        #[arg(long)]
        output: Option<String>,
        /// Tabulate every input word up to this length.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Reduce a probabilistic automaton or minimize a DFA.
    Reduce {
        file: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Decide equivalence of two documents of the same kind.
    Equiv { a: PathBuf, b: PathBuf },
    /// Cut-point languages.
    Lang {
        #[command(subcommand)]
        cmd: LangCmd,
    },
    /// Scan for strings within δ of the cut-point.
    Isolate {
        file: PathBuf,
        #[command(flatten)]
        cut: CutDelta,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Extract a DFA for an isolated cut-point language.
    ExtractDfa {
        file: PathBuf,
        #[command(flatten)]
        cut: CutDelta,
        /// Write DOT text here ("-" for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Ergodicity test over matrix patterns.
    Ergodic { file: PathBuf },
    /// Stability check.
    Stable { file: PathBuf },
    /// Definite-language representation.
    Definite {
        file: PathBuf,
        #[command(flatten)]
        cut: CutDelta,
    },
    /// Linear automata.
    La {
        #[command(subcommand)]
        cmd: LaCmd,
    },
    /// Markov chains.
    Mc {
        #[command(subcommand)]
        cmd: McCmd,
    },
    /// Random sequences.
    Rs {
        #[command(subcommand)]
        cmd: RsCmd,
    },
}

#[derive(Args)]
struct CutDelta {
    #[arg(long, value_parser = num::parse)]
    cutpoint: f64,
    #[arg(long, value_parser = num::parse)]
    delta: f64,
}

#[derive(Subcommand)]
enum LangCmd {
    /// Exit 0 when the word is a member, 1 otherwise.
    Member {
        file: PathBuf,
        #[arg(long, value_parser = num::parse)]
        cutpoint: f64,
        #[arg(long)]
        input: String,
    },
    /// Members up to a length, shortlex order.
    Enum {
        file: PathBuf,
        #[arg(long, value_parser = num::parse)]
        cutpoint: f64,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Automaton with the same language at another cut-point.
    Shift {
        file: PathBuf,
        #[arg(long, value_parser = num::parse)]
        from: f64,
        #[arg(long, value_parser = num::parse)]
        to: f64,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy)]
enum BinOp {
    Sum,
    Prod,
    Conv,
}

#[derive(Subcommand)]
enum LaCmd {
    /// Algebra on linear automata.
    Op {
        #[command(subcommand)]
        op: LaOp,
    },
    /// Minimal linear automaton from a string-function table.
    Realize {
        file: PathBuf,
        /// Defaults to half the table depth.
        #[arg(long)]
        rank_bound: Option<usize>,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Hankel rank, plus reachability and distinguishability degrees for automata.
    Rank {
        file: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Rational expression as an S-expression.
    Expr { file: PathBuf },
    /// Probabilistic automaton with f_A(u) = a^{|u|+1} f_L(u) + 1/(n+2).
    EmbedPa {
        file: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Probabilistic automaton whose cut-point-1/(n+4) language is {u | f_L(u) > a}.
    LangPa {
        file: PathBuf,
        #[arg(long, value_parser = num::parse)]
        cutpoint: f64,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LaOp {
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    Prod {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    Conv {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    Scale {
        a: PathBuf,
        #[arg(long, value_parser = num::parse, allow_hyphen_values = true)]
        factor: f64,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    Rev {
        a: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    Iter {
        a: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum McCmd {
    /// f_M(u)
    Eval {
        file: PathBuf,
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand)]
enum RsCmd {
    /// Output sequence of a transducer fed with a random sequence.
    Transform {
        seq: PathBuf,
        pa: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Refuted(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Isolation(_) => Failure::Refuted(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// stdout text and exit code
struct Report {
    text: String,
    code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }

    fn verdict(text: String, holds: bool) -> Self {
        Report {
            text,
            code: if holds { 0 } else { 1 },
        }
    }
}

type Out = Result<Report, Failure>;

fn load(path: &Path, tol: &Tolerances) -> Result<Document, Failure> {
    Ok(io::load(path, tol)?)
}

fn wrong(path: &Path, want: &str, doc: &Document) -> Failure {
    Failure::Input(format!("{}: expected {}, found {}", path.display(), want, doc.kind()))
}

fn moore(path: &Path, tol: &Tolerances) -> Result<MoorePA, Failure> {
    match load(path, tol)? {
        Document::MoorePA(a) => Ok(a),
        d => Err(wrong(path, "moore_pa", &d)),
    }
}

fn linear(path: &Path, tol: &Tolerances) -> Result<LinearAutomaton, Failure> {
    match load(path, tol)? {
        Document::LinearAutomaton(l) => Ok(l),
        d => Err(wrong(path, "linear_automaton", &d)),
    }
}

fn word(a: &Alphabet, text: &str) -> Result<Word, Failure> {
    if text == "ε" {
        return Ok(Vec::new());
    }
    Ok(a.parse_word(text)?)
}

/// Writes the document to `out`, or prints its JSON when absent.
fn emit(doc: &Document, out: &Option<PathBuf>, summary: String) -> Out {
    match out {
        Some(p) => {
            io::save(p, doc)?;
            Ok(Report::ok(format!("{}\nwrote {}\n", summary, p.display())))
        }
        None => Ok(Report::ok(io::to_json(doc))),
    }
}

fn describe(doc: &Document) -> String {
    match doc {
        Document::GeneralPA(a) => format!(
            "general_pa: {} states, {} inputs, {} outputs",
            a.n(),
            a.inputs().len(),
            a.outputs().len()
        ),
        Document::MoorePA(a) => format!("moore_pa: {} states, {} inputs", a.n(), a.inputs().len()),
        Document::LinearAutomaton(l) => format!("linear_automaton: dimension {}, {} inputs", l.dim(), l.inputs().len()),
        Document::MarkovChain(c) => format!("markov_chain: {} states, {} signals", c.labels().len(), c.signals().len()),
        Document::Dfa(d) => format!("dfa: {} states, {} symbols", d.n(), d.alphabet().len()),
        Document::StringFunction(f) => format!("string_function: depth {}, {} symbols", f.depth(), f.alphabet().len()),
        Document::RandomSequence(z) => format!("random_sequence: depth {}, {} symbols", z.depth(), z.alphabet().len()),
    }
}

fn input_alphabet(doc: &Document) -> &Alphabet {
    match doc {
        Document::GeneralPA(a) => a.inputs(),
        Document::MoorePA(a) => a.inputs(),
        Document::LinearAutomaton(l) => l.inputs(),
        Document::MarkovChain(c) => c.signals(),
        Document::Dfa(d) => d.alphabet(),
        Document::StringFunction(f) => f.alphabet(),
        Document::RandomSequence(z) => z.alphabet(),
    }
}

fn value(doc: &Document, u: &[usize]) -> Result<f64, Failure> {
    Ok(match doc {
        Document::GeneralPA(_) => unreachable!("general automata need an output word"),
        Document::MoorePA(a) => a.avg_reaction(u)?,
        Document::LinearAutomaton(l) => l.reaction(u)?,
        Document::MarkovChain(c) => c.function(u)?,
        Document::Dfa(d) => {
            if d.accepts(u) {
                1.0
            } else {
                0.0
            }
        }
        Document::StringFunction(f) => f.get(u)?,
        Document::RandomSequence(z) => z.value(u)?,
    })
}

fn general_lines(a: &GeneralPA, u: &[usize], output: Option<&str>, s: &mut String) -> Result<(), Failure> {
    match output {
        Some(v) => {
            let v = word(a.outputs(), v)?;
            let _ = writeln!(s, "{}", num::fmt(a.reaction(u, &v)?));
        }
        None => {
            for v in words_up_to(a.outputs().len(), u.len()).into_iter().filter(|v| v.len() == u.len()) {
                let _ = writeln!(s, "{}\t{}", a.outputs().display_word(&v), num::fmt(a.reaction(u, &v)?));
            }
        }
    }
    Ok(())
}

fn react(file: &Path, input: Option<String>, output: Option<String>, max_len: Option<usize>, tol: &Tolerances) -> Out {
    let doc = load(file, tol)?;
    let alphabet = input_alphabet(&doc).clone();
    let mut s = String::new();
    match (input, max_len) {
        (Some(u), _) => {
            let u = word(&alphabet, &u)?;
            match &doc {
                Document::GeneralPA(a) => general_lines(a, &u, output.as_deref(), &mut s)?,
                _ => {
                    let _ = writeln!(s, "{}", num::fmt(value(&doc, &u)?));
                }
            }
        }
        (None, Some(l)) => {
            for u in words_up_to(alphabet.len(), l) {
                let label = alphabet.display_word(&u);
                match &doc {
                    Document::GeneralPA(a) => {
                        let mut inner = String::new();
                        general_lines(a, &u, output.as_deref(), &mut inner)?;
                        for line in inner.lines() {
                            let _ = writeln!(s, "{}\t{}", label, line);
                        }
                    }
                    _ => {
                        let _ = writeln!(s, "{}\t{}", label, num::fmt(value(&doc, &u)?));
                    }
                }
            }
        }
        (None, None) => return Err(Failure::Input("give --input or --max-len".into())),
    }
    Ok(Report::ok(s))
}

fn reduce(file: &Path, out: &Option<PathBuf>, tol: &Tolerances) -> Out {
    let doc = load(file, tol)?;
    let (before, after, reduced) = match &doc {
        Document::GeneralPA(a) => {
            let r = a.reduce(tol);
            (a.n(), r.n(), Document::GeneralPA(r))
        }
        Document::MoorePA(a) => {
            let r = a.reduce_avg(tol);
            (a.n(), r.n(), Document::MoorePA(r))
        }
        Document::Dfa(d) => {
            let r = d.minimize();
            (d.n(), r.n(), Document::Dfa(r))
        }
        d => return Err(wrong(file, "general_pa, moore_pa or dfa", d)),
    };
    emit(&reduced, out, format!("states: {} -> {}", before, after))
}

fn dfa_equivalent(a: &Dfa, b: &Dfa) -> bool {
    a.alphabet() == b.alphabet() && a.minimize().agrees_up_to(&b.minimize(), a.n() + b.n())
}

fn equiv(a: &Path, b: &Path, tol: &Tolerances) -> Out {
    let (da, db) = (load(a, tol)?, load(b, tol)?);
    let same = match (&da, &db) {
        (Document::GeneralPA(x), Document::GeneralPA(y)) => x.equivalent(y, tol)?,
        (Document::MoorePA(x), Document::MoorePA(y)) => x.avg_equivalent(y, tol)?,
        (Document::LinearAutomaton(x), Document::LinearAutomaton(y)) => x.equivalent(y, tol)?,
        (Document::Dfa(x), Document::Dfa(y)) => dfa_equivalent(x, y),
        (x, y) => return Err(Failure::Input(format!("cannot compare {} with {}", x.kind(), y.kind()))),
    };
    let text = if same { "equivalent\n" } else { "not equivalent\n" };
    Ok(Report::verdict(text.into(), same))
}

fn lang(cmd: LangCmd, tol: &Tolerances) -> Out {
    match cmd {
        LangCmd::Member { file, cutpoint, input } => {
            let a = moore(&file, tol)?;
            let u = word(a.inputs(), &input)?;
            let f = a.avg_reaction(&u)?;
            let m = member(&a, cutpoint, &u)?;
            let text = format!(
                "{} ({} {} {})\n",
                if m { "member" } else { "not member" },
                num::fmt(f),
                if m { ">" } else { "<=" },
                num::fmt(cutpoint)
            );
            Ok(Report::verdict(text, m))
        }
        LangCmd::Enum { file, cutpoint, max_len } => {
            let a = moore(&file, tol)?;
            let mut s = String::new();
            for u in enumerate(&a, cutpoint, max_len) {
                let _ = writeln!(s, "{}", a.inputs().display_word(&u));
            }
            Ok(Report::ok(s))
        }
        LangCmd::Shift { file, from, to, out } => {
            let a = moore(&file, tol)?;
            let b = shift_cutpoint(&a, from, to)?;
            let summary = format!("cut-point {} -> {}, states: {} -> {}", num::fmt(from), num::fmt(to), a.n(), b.n());
            emit(&Document::MoorePA(b), &out, summary)
        }
    }
}

fn isolate(file: &Path, cut: &CutDelta, max_len: usize, tol: &Tolerances) -> Out {
    let a = moore(file, tol)?;
    let r = isolation_scan(&a, cut.cutpoint, cut.delta, max_len, tol)?;
    Ok(match r.status {
        IsolationStatus::ClearUpTo(l) => Report::ok(format!("clear up to length {}, min gap {}\n", l, num::fmt(r.min_gap))),
        IsolationStatus::Refuted(u) => Report::verdict(
            format!(
                "refuted at {} (value {})\n",
                a.inputs().display_word(&u),
                num::fmt(a.avg_reaction(&u)?)
            ),
            false,
        ),
    })
}

fn extract(file: &Path, cut: &CutDelta, dot: &Option<PathBuf>, out: &Option<PathBuf>, tol: &Tolerances) -> Out {
    let a = moore(file, tol)?;
    let e = extract_dfa(&a, cut.cutpoint, cut.delta)?;
    let d = &e.dfa;
    let mut s = String::new();
    let _ = writeln!(s, "states: {} (explored {}, bound {})", d.n(), e.raw_states, num::fmt(e.bound));
    for q in 0..d.n() {
        let arrows: Vec<String> = (0..d.alphabet().len())
            .map(|x| format!("{}->q{}", d.alphabet().symbol(x), d.next(q, x)))
            .collect();
        let mark = match (q == d.start(), d.is_accepting(q)) {
            (true, true) => " start accept",
            (true, false) => " start",
            (false, true) => " accept",
            (false, false) => "",
        };
        let _ = writeln!(s, "q{}:{} {}", q, mark, arrows.join(" "));
    }
    match dot.as_deref() {
        Some(p) if p == Path::new("-") => s.push_str(&d.to_dot()),
        Some(p) => {
            std::fs::write(p, d.to_dot()).map_err(|e| Failure::Input(format!("{}: {}", p.display(), e)))?;
            let _ = writeln!(s, "wrote {}", p.display());
        }
        None => {}
    }
    if let Some(p) = out {
        io::save(p, &Document::Dfa(d.clone()))?;
        let _ = writeln!(s, "wrote {}", p.display());
    }
    Ok(Report::ok(s))
}

fn ergodic(file: &Path, tol: &Tolerances) -> Out {
    let a = moore(file, tol)?;
    let r = ergodic_test(&a, tol);
    Ok(match r.witness {
        None => Report::ok(format!("ergodic ({} patterns)\n", r.patterns)),
        Some(w) => Report::verdict(
            format!("not ergodic: pattern of {} is not primitive\n", a.inputs().display_word(&w)),
            false,
        ),
    })
}

fn stable(file: &Path, tol: &Tolerances) -> Out {
    let a = moore(file, tol)?;
    Ok(match stability_check(&a, tol) {
        Stability::StableAll => Report::ok("stable for every cut-point\n".into()),
        Stability::PositiveWordStable(l) => Report::ok(format!("stable: every word of length {} has a positive matrix\n", l)),
        Stability::Unknown => Report::verdict("unknown\n".into(), false),
    })
}

fn definite(file: &Path, cut: &CutDelta, tol: &Tolerances) -> Out {
    let a = moore(file, tol)?;
    let Some(rep) = definite_rep(&a, cut.cutpoint, cut.delta, tol)? else {
        return Ok(Report::verdict(
            "no definiteness certificate: neither positive nor ergodic\n".into(),
            false,
        ));
    };
    let x = a.inputs();
    let accepted = rep.suffix.iter().filter(|&&b| b).count();
    let mut s = format!("k: {}\naccepting suffixes: {} of {}\n", rep.k, accepted, rep.suffix.len());
    let short: Vec<String> = words_up_to(x.len(), rep.k - 1)
        .iter()
        .zip(&rep.short)
        .filter(|(_, &b)| b)
        .map(|(u, _)| x.display_word(u))
        .collect();
    let _ = writeln!(
        s,
        "short members: {}",
        if short.is_empty() { "-".to_string() } else { short.join(" ") }
    );
    Ok(Report::ok(s))
}

fn la(cmd: LaCmd, tol: &Tolerances) -> Out {
    match cmd {
        LaCmd::Op { op } => {
            let (res, out) = match op {
                LaOp::Sum { a, b, out } => (binary(&a, &b, BinOp::Sum, tol)?, out),
                LaOp::Prod { a, b, out } => (binary(&a, &b, BinOp::Prod, tol)?, out),
                LaOp::Conv { a, b, out } => (binary(&a, &b, BinOp::Conv, tol)?, out),
                LaOp::Scale { a, factor, out } => (linear(&a, tol)?.unary(LaUnary::Scale(factor), tol)?, out),
                LaOp::Rev { a, out } => (linear(&a, tol)?.unary(LaUnary::Reverse, tol)?, out),
                LaOp::Iter { a, out } => (linear(&a, tol)?.unary(LaUnary::Iterate, tol)?, out),
            };
            let summary = format!("dimension {}", res.dim());
            emit(&Document::LinearAutomaton(res), &out, summary)
        }
        LaCmd::Realize { file, rank_bound, out } => {
            let f: Box<dyn StringFunction> = match load(&file, tol)? {
                Document::StringFunction(f) => Box::new(f),
                d => return Err(wrong(&file, "string_function", &d)),
            };
            let depth = f.max_len().unwrap_or(0);
            let l = realize(f.as_ref(), rank_bound.unwrap_or(depth / 2), tol)?;
            let summary = format!("dimension {}", l.dim());
            emit(&Document::LinearAutomaton(l), &out, summary)
        }
        LaCmd::Rank { file, depth } => match load(&file, tol)? {
            Document::StringFunction(f) => {
                let r = e_f_dimension(&f, depth.unwrap_or(f.depth()), tol)?;
                Ok(Report::ok(format!("hankel rank: {}\n", r)))
            }
            Document::LinearAutomaton(l) => {
                let r = e_f_dimension(&l, depth.unwrap_or(2 * l.dim()), tol)?;
                Ok(Report::ok(format!(
                    "hankel rank: {}\nreach degree: {}\ndistinguishing degree: {}\n",
                    r,
                    reach_degree(&l, tol),
                    disting_degree(&l, tol)
                )))
            }
            d => Err(wrong(&file, "string_function or linear_automaton", &d)),
        },
        LaCmd::Expr { file } => {
            let l = linear(&file, tol)?;
            Ok(Report::ok(format!("{}\n", la_to_rational_expr(&l).to_sexpr(l.inputs()))))
        }
        LaCmd::EmbedPa { file, out } => {
            let l = linear(&file, tol)?;
            let (a, scale) = la_to_pa_affine(&l, tol)?;
            let summary = format!("states: {}, scale: {}", a.n(), num::fmt(scale));
            emit(&Document::MoorePA(a), &out, summary)
        }
        LaCmd::LangPa { file, cutpoint, out } => {
            let l = linear(&file, tol)?;
            let a = la_language_pa(&l, cutpoint, tol)?;
            let summary = format!("states: {}, cut-point: {}", a.n(), num::fmt(1.0 / a.n() as f64));
            emit(&Document::MoorePA(a), &out, summary)
        }
    }
}

fn binary(a: &Path, b: &Path, op: BinOp, tol: &Tolerances) -> Result<LinearAutomaton, Failure> {
    let (x, y) = (linear(a, tol)?, linear(b, tol)?);
    let op = match op {
        BinOp::Sum => LaBinary::Sum,
        BinOp::Prod => LaBinary::Product,
        BinOp::Conv => LaBinary::Convolution,
    };
    Ok(x.combine(op, &y)?)
}

fn mc(cmd: McCmd, tol: &Tolerances) -> Out {
    let McCmd::Eval { file, input } = cmd;
    match load(&file, tol)? {
        Document::MarkovChain(c) => {
            let u = word(c.signals(), &input)?;
            Ok(Report::ok(format!("{}\n", num::fmt(c.function(&u)?))))
        }
        d => Err(wrong(&file, "markov_chain", &d)),
    }
}

fn rs(cmd: RsCmd, tol: &Tolerances) -> Out {
    let RsCmd::Transform { seq, pa, out } = cmd;
    let zeta = match load(&seq, tol)? {
        Document::RandomSequence(z) => z,
        d => return Err(wrong(&seq, "random_sequence", &d)),
    };
    let a = match load(&pa, tol)? {
        Document::GeneralPA(a) => a,
        d => return Err(wrong(&pa, "general_pa", &d)),
    };
    let r = transform(&zeta, &a, tol)?;
    let summary = format!("depth {}", r.depth());
    emit(&Document::RandomSequence(r), &out, summary)
}

fn run(cli: Cli) -> Out {
    let tol = cli.tolerance.map(Tolerances::uniform).unwrap_or_default();
    let tol = &tol;
    match cli.cmd {
        Cmd::Validate { file, out } => {
            let doc = load(&file, tol)?;
            let summary = format!("ok {}", describe(&doc));
            match out {
                Some(_) => emit(&doc, &out, summary),
                None => Ok(Report::ok(summary + "\n")),
            }
        }
        Cmd::React {
            file,
            input,
            output,
            max_len,
        } => react(&file, input, output, max_len, tol),
        Cmd::Reduce { file, out } => reduce(&file, &out, tol),
        Cmd::Equiv { a, b } => equiv(&a, &b, tol),
        Cmd::Lang { cmd } => lang(cmd, tol),
        Cmd::Isolate { file, cut, max_len } => isolate(&file, &cut, max_len, tol),
        Cmd::ExtractDfa { file, cut, dot, out } => extract(&file, &cut, &dot, &out, tol),
        Cmd::Ergodic { file } => ergodic(&file, tol),
        Cmd::Stable { file } => stable(&file, tol),
        Cmd::Definite { file, cut } => definite(&file, &cut, tol),
        Cmd::La { cmd } => la(cmd, tol),
        Cmd::Mc { cmd } => mc(cmd, tol),
        Cmd::Rs { cmd } => rs(cmd, tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(r) => {
            print!("{}", r.text);
            ExitCode::from(r.code)
        }
        Err(Failure::Refuted(m)) => {
            println!("refuted: {}", m);
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
    }
}
