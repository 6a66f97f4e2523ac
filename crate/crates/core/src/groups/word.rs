use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad word at column {column}: {message}")]
pub struct WordError {
    pub column: usize,
    pub message: String,
}

/// Freely reduced word; letters are `(generator, nonzero exponent)` and
/// neighbours never share a generator. Evaluated as a composition, so the
/// rightmost letter acts first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(String, i64)>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letter(name: &str, exp: i64) -> Self {
        Word::from_letters(vec![(name.to_string(), exp)])
    }

    pub fn from_letters(letters: Vec<(String, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(&g, e);
        }
        w
    }

    fn push(&mut self, g: &str, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g.to_string(), e));
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Word length: the sum of absolute exponents.
    pub fn len(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (g, e) in &other.letters {
            w.push(g, *e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(g, e)| (g.clone(), -e))
                .collect(),
        }
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.concat(&base))
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Parses `b a^2 b^-1 a^-2`; letters may also be joined by `*` or `.`,
    /// and `1` denotes the empty word.
    pub fn parse(s: &str) -> Result<Word, WordError> {
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut w = Word::identity();
        let err = |column: usize, message: &str| WordError {
            column: column + 1,
            message: message.to_string(),
        };
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '*' || c == '.' {
                i += 1;
                continue;
            }
            if c == '1' {
                i += 1;
                continue;
            }
            if !(c.is_alphabetic() || c == '_') {
                return Err(err(i, &format!("unexpected '{c}'")));
            }
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let mut exp = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let paren = i < chars.len() && chars[i] == '(';
                if paren {
                    i += 1;
                }
                let es = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[es..i].iter().collect();
                exp = text
                    .parse()
                    .map_err(|_| err(es, "expected an integer exponent"))?;
                if paren {
                    if i < chars.len() && chars[i] == ')' {
                        i += 1;
                    } else {
                        return Err(err(i, "expected ')'"));
                    }
                }
            }
            w.push(&name, exp);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        let w = Word::parse("b a a^-1 b^2 c^(-3)").unwrap();
        assert_eq!(w.to_string(), "b^3 c^-3");
        assert_eq!(w.len(), 6);
        assert!(Word::parse("1").unwrap().is_empty());
        assert!(Word::parse("a b^x").is_err());
        assert_eq!(Word::parse("a*b.a").unwrap().letters().len(), 3);
    }

    #[test]
    fn inverse_cancels() {
        let w = Word::parse("a b^2 a^-1 b").unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(Word::parse("a^3").unwrap(), Word::letter("a", 1).power(3));
        let c = Word::commutator(&Word::letter("a", 1), &Word::letter("b", 1));
        assert_eq!(c.to_string(), "a b a^-1 b^-1");
    }
}
