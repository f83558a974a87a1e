//! Alphabets, words as symbol-index vectors, and shortlex indexing of X^{≤k}.

use crate::error::{Error, Result};

pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Invalid("empty alphabet".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains([',', ' ', '|']) {
                return Err(Error::Invalid(format!("bad symbol `{}`", s)));
            }
            if symbols[..i].contains(s) {
                return Err(Error::Invalid(format!("duplicate symbol `{}`", s)));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, s: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses "abc" (single-character symbols) or "a,b,c" / "a b c".
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains([',', ' ']) || !self.single_char() {
            text.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| self.index_of(s)).collect()
        } else {
            text.chars().map(|c| self.index_of(&c.to_string())).collect()
        }
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        let sep = if self.single_char() { "" } else { "," };
        w.iter().map(|&i| self.symbols[i].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Word text with ε for the empty word.
    pub fn display_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else {
            self.format_word(w)
        }
    }
}

/// Number of words of length ≤ depth over m letters.
pub fn count_up_to(m: usize, depth: usize) -> usize {
    (0..=depth).map(|k| m.pow(k as u32)).sum()
}

/// Shortlex rank of `w` among all words over m letters.
pub fn shortlex_index(m: usize, w: &[usize]) -> usize {
    let offset = count_up_to(m, w.len()) - m.pow(w.len() as u32);
    offset + w.iter().fold(0, |acc, &x| acc * m + x)
}

/// All words of length exactly k, lexicographic.
pub fn words_of_len(m: usize, k: usize) -> Vec<Word> {
    let total = m.pow(k as u32);
    (0..total)
        .map(|mut r| {
            let mut w = vec![0; k];
            for i in (0..k).rev() {
                w[i] = r % m;
                r /= m;
            }
            w
        })
        .collect()
}

/// All words of length ≤ depth in shortlex order.
pub fn words_up_to(m: usize, depth: usize) -> Vec<Word> {
    (0..=depth).flat_map(|k| words_of_len(m, k)).collect()
}

pub fn concat(a: &[usize], b: &[usize]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}
