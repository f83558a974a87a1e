//! Versioned JSON documents (`"schema": 1`) for every automaton kind.

use crate::error::{Error, Result};
use crate::general_pa::GeneralPA;
use crate::languages::Dfa;
use crate::linalg::{Matrix, Tolerances};
use crate::linear::{LinearAutomaton, StringFunctionTable};
use crate::moore_pa::MoorePA;
use crate::sequences::{MarkovChain, RandomSequence};
use crate::words::{shortlex_index, words_up_to, Alphabet};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub const SCHEMA: u32 = 1;

type Rows = Vec<Vec<f64>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Raw {
    GeneralPa {
        schema: u32,
        inputs: Vec<String>,
        outputs: Vec<String>,
        trans: BTreeMap<String, Rows>,
        initial: Vec<f64>,
    },
    MoorePa {
        schema: u32,
        inputs: Vec<String>,
        trans: BTreeMap<String, Rows>,
        initial: Vec<f64>,
        lambda: Vec<f64>,
    },
    LinearAutomaton {
        schema: u32,
        inputs: Vec<String>,
        trans: BTreeMap<String, Rows>,
        initial: Vec<f64>,
        lambda: Vec<f64>,
    },
    MarkovChain {
        schema: u32,
        signals: Vec<String>,
        transition: Rows,
        labels: Vec<String>,
        initial: Vec<f64>,
    },
    Dfa {
        schema: u32,
        alphabet: Vec<String>,
        start: usize,
        delta: Vec<Vec<Option<usize>>>,
        accepting: Vec<bool>,
    },
    StringFunction {
        schema: u32,
        alphabet: Vec<String>,
        depth: usize,
        values: BTreeMap<String, f64>,
    },
    RandomSequence {
        schema: u32,
        alphabet: Vec<String>,
        depth: usize,
        values: BTreeMap<String, f64>,
    },
}

impl Raw {
    fn schema(&self) -> u32 {
        match self {
            Raw::GeneralPa { schema, .. }
            | Raw::MoorePa { schema, .. }
            | Raw::LinearAutomaton { schema, .. }
            | Raw::MarkovChain { schema, .. }
            | Raw::Dfa { schema, .. }
            | Raw::StringFunction { schema, .. }
            | Raw::RandomSequence { schema, .. } => *schema,
        }
    }
}

/// Any loadable object.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    GeneralPA(GeneralPA),
    MoorePA(MoorePA),
    LinearAutomaton(LinearAutomaton),
    MarkovChain(MarkovChain),
    Dfa(Dfa),
    StringFunction(StringFunctionTable),
    RandomSequence(RandomSequence),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::GeneralPA(_) => "general_pa",
            Document::MoorePA(_) => "moore_pa",
            Document::LinearAutomaton(_) => "linear_automaton",
            Document::MarkovChain(_) => "markov_chain",
            Document::Dfa(_) => "dfa",
            Document::StringFunction(_) => "string_function",
            Document::RandomSequence(_) => "random_sequence",
        }
    }
}

fn at(path: &str, e: Error) -> Error {
    Error::Schema(format!("{}: {}", path, e))
}

fn alphabet(path: &str, symbols: Vec<String>) -> Result<Alphabet> {
    Alphabet::new(symbols).map_err(|e| at(path, e))
}

fn matrix(path: &str, rows: &Rows) -> Result<Matrix> {
    Matrix::from_rows(rows).map_err(|e| at(path, e))
}

/// One matrix per key of `keys`, no extras.
fn keyed(path: &str, mut trans: BTreeMap<String, Rows>, keys: &[String]) -> Result<Vec<Matrix>> {
    let mut out = Vec::with_capacity(keys.len());
    for k in keys {
        let rows = trans
            .remove(k)
            .ok_or_else(|| Error::Schema(format!("{}: missing key `{}`", path, k)))?;
        out.push(matrix(&format!("{}.{}", path, k), &rows)?);
    }
    if let Some(k) = trans.keys().next() {
        return Err(Error::Schema(format!("{}: unexpected key `{}`", path, k)));
    }
    Ok(out)
}

fn word_values(path: &str, a: &Alphabet, depth: usize, mut values: BTreeMap<String, f64>) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for u in words_up_to(a.len(), depth) {
        let key = a.format_word(&u);
        let v = values
            .remove(&key)
            .ok_or_else(|| Error::Schema(format!("{}: missing word `{}`", path, key)))?;
        out.push(v);
    }
    if let Some(k) = values.keys().next() {
        return Err(Error::Schema(format!(
            "{}: unexpected word `{}` (beyond depth {} or unknown symbol)",
            path, k, depth
        )));
    }
    Ok(out)
}

fn pair_keys(x: &Alphabet, y: &Alphabet) -> Vec<String> {
    x.symbols()
        .iter()
        .flat_map(|a| y.symbols().iter().map(move |b| format!("{}|{}", a, b)))
        .collect()
}

fn rows(m: &Matrix) -> Rows {
    m.to_rows()
}

fn word_map(a: &Alphabet, depth: usize, values: &[f64]) -> BTreeMap<String, f64> {
    words_up_to(a.len(), depth)
        .iter()
        .map(|u| (a.format_word(u), values[shortlex_index(a.len(), u)]))
        .collect()
}

/// Parses and validates; serde errors carry line and column, validation errors a field path.
pub fn from_json(text: &str, tol: &Tolerances) -> Result<Document> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Schema(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
    if raw.schema() != SCHEMA {
        return Err(Error::Schema(format!(
            "schema: unsupported version {}, expected {}",
            raw.schema(),
            SCHEMA
        )));
    }
    let doc = match raw {
        Raw::GeneralPa {
            inputs,
            outputs,
            trans,
            initial,
            ..
        } => {
            let x = alphabet("inputs", inputs)?;
            let y = alphabet("outputs", outputs)?;
            let m = keyed("trans", trans, &pair_keys(&x, &y))?;
            Document::GeneralPA(GeneralPA::new(x, y, m, initial, tol).map_err(|e| at("general_pa", e))?)
        }
        Raw::MoorePa {
            inputs,
            trans,
            initial,
            lambda,
            ..
        } => {
            let x = alphabet("inputs", inputs)?;
            let m = keyed("trans", trans, x.symbols())?;
            Document::MoorePA(MoorePA::new(x, m, initial, lambda, tol).map_err(|e| at("moore_pa", e))?)
        }
        Raw::LinearAutomaton {
            inputs,
            trans,
            initial,
            lambda,
            ..
        } => {
            let x = alphabet("inputs", inputs)?;
            let m = keyed("trans", trans, x.symbols())?;
            Document::LinearAutomaton(LinearAutomaton::new(x, initial, m, lambda).map_err(|e| at("linear_automaton", e))?)
        }
        Raw::MarkovChain {
            signals,
            transition,
            labels,
            initial,
            ..
        } => {
            let s = alphabet("signals", signals)?;
            let labels = labels
                .iter()
                .enumerate()
                .map(|(i, l)| s.index_of(l).map_err(|e| at(&format!("labels[{}]", i), e)))
                .collect::<Result<Vec<_>>>()?;
            let t = matrix("transition", &transition)?;
            Document::MarkovChain(MarkovChain::new(s, t, labels, initial, tol).map_err(|e| at("markov_chain", e))?)
        }
        Raw::Dfa {
            alphabet: a,
            start,
            delta,
            accepting,
            ..
        } => {
            let a = alphabet("alphabet", a)?;
            Document::Dfa(Dfa::from_partial(a, start, delta, accepting).map_err(|e| at("dfa", e))?)
        }
        Raw::StringFunction {
            alphabet: a,
            depth,
            values,
            ..
        } => {
            let a = alphabet("alphabet", a)?;
            let v = word_values("values", &a, depth, values)?;
            Document::StringFunction(StringFunctionTable::new(a, depth, v).map_err(|e| at("string_function", e))?)
        }
        Raw::RandomSequence {
            alphabet: a,
            depth,
            values,
            ..
        } => {
            let a = alphabet("alphabet", a)?;
            let v = word_values("values", &a, depth, values)?;
            Document::RandomSequence(RandomSequence::new(a, depth, v, tol).map_err(|e| at("random_sequence", e))?)
        }
    };
    Ok(doc)
}

pub fn to_json(doc: &Document) -> String {
    let schema = SCHEMA;
    let raw = match doc {
        Document::GeneralPA(a) => {
            let (x, y) = (a.inputs(), a.outputs());
            let mut trans = BTreeMap::new();
            for (i, xs) in x.symbols().iter().enumerate() {
                for (j, ys) in y.symbols().iter().enumerate() {
                    trans.insert(format!("{}|{}", xs, ys), rows(a.trans(i, j)));
                }
            }
            Raw::GeneralPa {
                schema,
                inputs: x.symbols().to_vec(),
                outputs: y.symbols().to_vec(),
                trans,
                initial: a.initial().to_vec(),
            }
        }
        Document::MoorePA(a) => Raw::MoorePa {
            schema,
            inputs: a.inputs().symbols().to_vec(),
            trans: a
                .inputs()
                .symbols()
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), rows(a.trans(i))))
                .collect(),
            initial: a.initial().to_vec(),
            lambda: a.lambda().to_vec(),
        },
        Document::LinearAutomaton(l) => Raw::LinearAutomaton {
            schema,
            inputs: l.inputs().symbols().to_vec(),
            trans: l
                .inputs()
                .symbols()
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), rows(l.trans(i))))
                .collect(),
            initial: l.initial().to_vec(),
            lambda: l.lambda().to_vec(),
        },
        Document::MarkovChain(c) => Raw::MarkovChain {
            schema,
            signals: c.signals().symbols().to_vec(),
            transition: rows(c.transition()),
            labels: c.labels().iter().map(|&l| c.signals().symbol(l).to_string()).collect(),
            initial: c.initial().to_vec(),
        },
        Document::Dfa(d) => Raw::Dfa {
            schema,
            alphabet: d.alphabet().symbols().to_vec(),
            start: d.start(),
            delta: d.table().into_iter().map(|r| r.into_iter().map(Some).collect()).collect(),
            accepting: d.accepting().to_vec(),
        },
        Document::StringFunction(f) => Raw::StringFunction {
            schema,
            alphabet: f.alphabet().symbols().to_vec(),
            depth: f.depth(),
            values: word_map(f.alphabet(), f.depth(), f.values()),
        },
        Document::RandomSequence(z) => Raw::RandomSequence {
            schema,
            alphabet: z.alphabet().symbols().to_vec(),
            depth: z.depth(),
            values: word_map(z.alphabet(), z.depth(), z.values()),
        },
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("serializable");
    s.push('\n');
    s
}

pub fn load(path: &Path, tol: &Tolerances) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {}", path.display(), e)))?;
    from_json(&text, tol).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("{}: {}", path.display(), m)),
        other => other,
    })
}

pub fn save(path: &Path, doc: &Document) -> Result<()> {
    std::fs::write(path, to_json(doc)).map_err(|e| Error::Schema(format!("{}: {}", path.display(), e)))
}
