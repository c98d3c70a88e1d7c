use super::{Diagnostic, DiagnosticKind, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    DotDot,
    Assign,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(v) => format!("integer `{v}`"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::DotDot => "..",
            Tok::Assign => ":=",
            Tok::Eq => "=",
            Tok::Ne => "!=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            _ => "?",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            col: self.col,
        }
    }
}

fn syntax(span: Span, message: impl Into<String>) -> Diagnostic {
    Diagnostic::new(DiagnosticKind::Syntax, span, message)
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor {
        chars: src.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        let span = cur.span();
        let Some(c) = cur.bump() else {
            out.push(Token { tok: Tok::Eof, span });
            return Ok(out);
        };
        let tok = match c {
            c if c.is_whitespace() => continue,
            '#' => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
                continue;
            }
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '=' => Tok::Eq,
            '\u{2260}' => Tok::Ne,
            '\u{2264}' => Tok::Le,
            '\u{2265}' => Tok::Ge,
            ':' => {
                if cur.peek() == Some('=') {
                    cur.bump();
                    Tok::Assign
                } else {
                    Tok::Colon
                }
            }
            '!' => {
                if cur.peek() == Some('=') {
                    cur.bump();
                    Tok::Ne
                } else {
                    return Err(syntax(span, "expected `!=`"));
                }
            }
            '<' => {
                if cur.peek() == Some('=') {
                    cur.bump();
                    Tok::Le
                } else {
                    Tok::Lt
                }
            }
            '>' => {
                if cur.peek() == Some('=') {
                    cur.bump();
                    Tok::Ge
                } else {
                    Tok::Gt
                }
            }
            '.' => {
                if cur.peek() == Some('.') {
                    cur.bump();
                    Tok::DotDot
                } else {
                    return Err(syntax(span, "unexpected `.`"));
                }
            }
            '"' => {
                let mut s = String::new();
                loop {
                    match cur.bump() {
                        None | Some('\n') => return Err(syntax(span, "unterminated string literal")),
                        Some('"') => break,
                        Some('\\') => match cur.bump() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            _ => return Err(syntax(cur.span(), "unknown escape in string literal")),
                        },
                        Some(c) => s.push(c),
                    }
                }
                Tok::Str(s)
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::from(c);
                while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                    digits.push(d);
                    cur.bump();
                }
                // `3.5` is a fractional literal; `0..4` is a range.
                if cur.peek() == Some('.') {
                    let mut ahead = cur.chars.clone();
                    ahead.next();
                    if ahead.next().is_some_and(|c| c.is_ascii_digit()) {
                        return Err(Diagnostic::new(
                            DiagnosticKind::Bounds,
                            span,
                            format!("fractional value `{digits}.…` is not allowed; state values are integers"),
                        ));
                    }
                }
                let v = digits.parse::<i64>().map_err(|_| {
                    Diagnostic::new(DiagnosticKind::Bounds, span, format!("integer `{digits}` is too large"))
                })?;
                Tok::Int(v)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut id = String::from(c);
                while let Some(d) = cur.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
                    id.push(d);
                    cur.bump();
                }
                Tok::Ident(id)
            }
            other => return Err(syntax(span, format!("unexpected character `{other}`"))),
        };
        out.push(Token { tok, span });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn ranges_and_operators() {
        assert_eq!(
            toks("0..4 := != ≠ <= ≤"),
            [
                Tok::Int(0),
                Tok::DotDot,
                Tok::Int(4),
                Tok::Assign,
                Tok::Ne,
                Tok::Ne,
                Tok::Le,
                Tok::Le,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(
            toks("a # comment\nb"),
            [Tok::Ident("a".into()), Tok::Ident("b".into()), Tok::Eof]
        );
    }

    #[test]
    fn fractional_literal_rejected_with_location() {
        let err = tokenize("x\n  3.5").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::Bounds);
        assert_eq!((err.span.line, err.span.col), (2, 3));
    }

    #[test]
    fn string_escapes() {
        assert_eq!(toks(r#""a\"b""#)[0], Tok::Str("a\"b".into()));
        assert!(tokenize("\"open").is_err());
    }
}
