use super::{Diagnostic, Location};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Lower(String),
    Upper(String),
    Int(i64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Bar,
    Dot,
    Neck,
    Colon,
    Eq,
    Minus,
    Slash,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Neck => "`:-`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub at: Location,
}

pub(crate) fn lex(text: &str, diags: &mut Vec<Diagnostic>) -> Vec<Token> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let at = Location { line, column: col };
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i, &mut col),
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = if c.is_ascii_uppercase() || c == '_' {
                    Tok::Upper(word)
                } else {
                    Tok::Lower(word)
                };
                out.push(Token { tok, at });
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                col += i - start;
                match digits.parse::<i64>() {
                    Ok(v) => out.push(Token { tok: Tok::Int(v), at }),
                    Err(_) => diags.push(Diagnostic::error(
                        at,
                        format!("integer literal `{digits}` is out of range"),
                    )),
                }
            }
            ':' if chars.get(i + 1) == Some(&'-') => {
                out.push(Token { tok: Tok::Neck, at });
                advance(2, &mut i, &mut col);
            }
            '<' if chars.get(i + 1) == Some(&'-') => {
                // `<-` is accepted as an alternative spelling of `:-`.
                out.push(Token { tok: Tok::Neck, at });
                advance(2, &mut i, &mut col);
            }
            _ => {
                let tok = match c {
                    '(' => Some(Tok::LParen),
                    ')' => Some(Tok::RParen),
                    '[' => Some(Tok::LBrack),
                    ']' => Some(Tok::RBrack),
                    ',' => Some(Tok::Comma),
                    '|' => Some(Tok::Bar),
                    '.' => Some(Tok::Dot),
                    ':' => Some(Tok::Colon),
                    '=' => Some(Tok::Eq),
                    '-' => Some(Tok::Minus),
                    '/' => Some(Tok::Slash),
                    _ => None,
                };
                match tok {
                    Some(tok) => out.push(Token { tok, at }),
                    None => diags.push(Diagnostic::error(at, format!("unexpected character `{c}`"))),
                }
                advance(1, &mut i, &mut col);
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        at: Location { line, column: col },
    });
    out
}
