use crate::error::{Error, Result};
use crate::words::{words_up_to, Alphabet, Word};
use std::collections::VecDeque;
use std::fmt::Write;

/// Complete deterministic automaton with accepting states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    /// δ(s,x) at s·|X| + x
    delta: Vec<usize>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(alphabet: Alphabet, start: usize, delta: Vec<Vec<usize>>, accepting: Vec<bool>) -> Result<Self> {
        let partial = delta.into_iter().map(|r| r.into_iter().map(Some).collect()).collect();
        Dfa::from_partial(alphabet, start, partial, accepting)
    }

    /// Rejects missing transitions.
    pub fn from_partial(alphabet: Alphabet, start: usize, delta: Vec<Vec<Option<usize>>>, accepting: Vec<bool>) -> Result<Self> {
        let n = accepting.len();
        let m = alphabet.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if delta.len() != n || start >= n {
            return Err(Error::Dimension("transition table size".into()));
        }
        let mut flat = Vec::with_capacity(n * m);
        for (s, row) in delta.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Dimension(format!("state {} has {} transitions", s, row.len())));
            }
            for (x, t) in row.iter().enumerate() {
                match t {
                    Some(t) if *t < n => flat.push(*t),
                    Some(t) => return Err(Error::Invalid(format!("δ({},{}) = {} out of range", s, alphabet.symbol(x), t))),
                    None => return Err(Error::Invalid(format!("partial DFA: δ({},{}) undefined", s, alphabet.symbol(x)))),
                }
            }
        }
        Ok(Dfa {
            alphabet,
            start,
            delta: flat,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn next(&self, s: usize, x: usize) -> usize {
        self.delta[s * self.alphabet.len() + x]
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.delta.chunks(self.alphabet.len()).map(|c| c.to_vec()).collect()
    }

    pub fn run(&self, u: &[usize]) -> usize {
        u.iter().fold(self.start, |s, &x| self.next(s, x))
    }

    pub fn accepts(&self, u: &[usize]) -> bool {
        self.accepting[self.run(u)]
    }

    pub fn language(&self, max_len: usize) -> Vec<Word> {
        words_up_to(self.alphabet.len(), max_len)
            .into_iter()
            .filter(|u| self.accepts(u))
            .collect()
    }

    /// S₀ = {start}, S_{i+1} = S_i ∪ δ(S_i, X) to the fixed point; also returns the round count.
    pub fn reachable_part(&self) -> (Dfa, usize) {
        let n = self.n();
        let mut reach = vec![false; n];
        reach[self.start] = true;
        let mut rounds = 0;
        loop {
            let mut grown = reach.clone();
            for s in (0..n).filter(|&s| reach[s]) {
                for x in 0..self.alphabet.len() {
                    grown[self.next(s, x)] = true;
                }
            }
            if grown == reach {
                break;
            }
            reach = grown;
            rounds += 1;
        }
        let keep: Vec<usize> = (0..n).filter(|&s| reach[s]).collect();
        let mut index = vec![usize::MAX; n];
        for (i, &s) in keep.iter().enumerate() {
            index[s] = i;
        }
        let delta = keep
            .iter()
            .flat_map(|&s| (0..self.alphabet.len()).map(move |x| (s, x)))
            .map(|(s, x)| index[self.next(s, x)])
            .collect();
        let d = Dfa {
            alphabet: self.alphabet.clone(),
            start: index[self.start],
            delta,
            accepting: keep.iter().map(|&s| self.accepting[s]).collect(),
        };
        (d, rounds)
    }

    /// Hopcroft partition refinement on the reachable part, states renumbered breadth-first.
    pub fn minimize(&self) -> Dfa {
        let (d, _) = self.reachable_part();
        let n = d.n();
        let m = d.alphabet.len();
        let mut inverse = vec![vec![Vec::new(); n]; m];
        for s in 0..n {
            for (x, inv) in inverse.iter_mut().enumerate() {
                inv[d.next(s, x)].push(s);
            }
        }
        let acc: Vec<usize> = (0..n).filter(|&s| d.accepting[s]).collect();
        let rej: Vec<usize> = (0..n).filter(|&s| !d.accepting[s]).collect();
        let mut blocks: Vec<Vec<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
        let mut block_of = vec![0; n];
        for (b, states) in blocks.iter().enumerate() {
            for &s in states {
                block_of[s] = b;
            }
        }
        let mut work: VecDeque<usize> = (0..blocks.len()).collect();
        while let Some(a) = work.pop_front() {
            let splitter = blocks[a].clone();
            for inv in &inverse {
                let mut mark = vec![false; n];
                for &t in &splitter {
                    for &s in &inv[t] {
                        mark[s] = true;
                    }
                }
                let touched: Vec<usize> = {
                    let mut v: Vec<usize> = (0..n).filter(|&s| mark[s]).map(|s| block_of[s]).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                };
                for y in touched {
                    let (inside, outside): (Vec<usize>, Vec<usize>) = blocks[y].iter().partition(|&&s| mark[s]);
                    if outside.is_empty() {
                        continue;
                    }
                    let new_id = blocks.len();
                    let (keep, split) = if inside.len() <= outside.len() {
                        (outside, inside)
                    } else {
                        (inside, outside)
                    };
                    for &s in &split {
                        block_of[s] = new_id;
                    }
                    blocks[y] = keep;
                    blocks.push(split);
                    // either both halves are pending or the smaller one must be
                    work.push_back(new_id);
                }
            }
        }
        // breadth-first renumbering from the start block
        let mut order = vec![usize::MAX; blocks.len()];
        let mut queue = VecDeque::from([block_of[d.start]]);
        order[block_of[d.start]] = 0;
        let mut count = 1;
        let mut reps = vec![d.start];
        while let Some(b) = queue.pop_front() {
            let rep = reps[order[b]];
            for x in 0..m {
                let nb = block_of[d.next(rep, x)];
                if order[nb] == usize::MAX {
                    order[nb] = count;
                    count += 1;
                    reps.push(blocks[nb][0]);
                    queue.push_back(nb);
                }
            }
        }
        let delta = reps
            .iter()
            .flat_map(|&r| (0..m).map(move |x| (r, x)))
            .map(|(r, x)| order[block_of[d.next(r, x)]])
            .collect();
        Dfa {
            alphabet: d.alphabet.clone(),
            start: 0,
            delta,
            accepting: reps.iter().map(|&r| d.accepting[r]).collect(),
        }
    }

    /// Same accepted words of length ≤ max_len.
    pub fn agrees_up_to(&self, other: &Dfa, max_len: usize) -> bool {
        self.alphabet == other.alphabet
            && words_up_to(self.alphabet.len(), max_len)
                .iter()
                .all(|u| self.accepts(u) == other.accepts(u))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.n() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  q{} [shape={}];", q, shape);
        }
        let _ = writeln!(s, "  init -> q{};", self.start);
        for q in 0..self.n() {
            let mut targets: Vec<(usize, Vec<&str>)> = Vec::new();
            for x in 0..self.alphabet.len() {
                let t = self.next(q, x);
                match targets.iter_mut().find(|(tt, _)| *tt == t) {
                    Some((_, labels)) => labels.push(self.alphabet.symbol(x)),
                    None => targets.push((t, vec![self.alphabet.symbol(x)])),
                }
            }
            for (t, labels) in targets {
                let _ = writeln!(s, "  q{} -> q{} [label=\"{}\"];", q, t, labels.join(","));
            }
        }
        s.push_str("}\n");
        s
    }
}
