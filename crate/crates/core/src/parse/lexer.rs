use num_bigint::BigInt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const SYMBOLS: &str = "+-*/^()[]{};:,=.";

/// Splits `src` into tokens. `#` starts a comment running to the end of the
/// line. Positions are 1-based and count characters.
pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (l, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let at = |tok| Token {
                tok,
                line: l + 1,
                column,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
            } else if c == 'θ' {
                i += 1;
                out.push(at(Tok::Ident("t".into())));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(at(Tok::Int(text.parse().expect("digits"))));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(at(Tok::Ident(chars[start..i].iter().collect())));
            } else if SYMBOLS.contains(c) {
                i += 1;
                out.push(at(Tok::Sym(c)));
            } else {
                return Err(ParseError::new(
                    l + 1,
                    column,
                    format!("unexpected character '{c}'"),
                ));
            }
        }
    }
    let line = src.lines().count().max(1);
    let column = src.lines().last().map_or(0, |s| s.chars().count()) + 1;
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        let toks = tokenize("let a = 1/3;  # note\n  t^2").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[0], Tok::Ident("let".into()));
        assert_eq!(kinds[3], Tok::Int(1.into()));
        let t = toks
            .iter()
            .find(|t| t.tok == Tok::Ident("t".into()))
            .unwrap();
        assert_eq!((t.line, t.column), (2, 3));
        let err = tokenize("a = 1 $ 2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));
    }
}
