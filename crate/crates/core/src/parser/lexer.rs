use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    LParen,
    RParen,
    Equals,
    DoubleCaret,
    /// `<...>` with the brackets stripped.
    FullIri(String),
    /// `prefix:local`; the prefix may be empty.
    PrefixedName(String, String),
    Keyword(String),
    Integer(u32),
    Literal(String),
    LangTag(String),
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
    /// Byte range in the source.
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn describe(&self, src: &str) -> String {
        match self.kind {
            TokenKind::Eof => "end of input".to_string(),
            _ => format!("`{}`", &src[self.start..self.end]),
        }
    }

    pub fn lexeme<'a>(&self, src: &'a str) -> &'a str {
        &src[self.start..self.end]
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.pos..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn eat_while(&mut self, pred: impl Fn(char) -> bool) {
        while matches!(self.peek(), Some(c) if pred(c)) {
            self.bump();
        }
    }
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '%')
}

pub(crate) fn tokenize(src: &str) -> (Vec<Token>, Vec<ParseError>) {
    let mut cur = Cursor {
        src,
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    let mut errors = Vec::new();
    // Position just past the last significant character, used for Eof.
    let mut last_end = (1usize, 1usize, 0usize);

    loop {
        cur.eat_while(char::is_whitespace);
        let (line, column, start) = (cur.line, cur.column, cur.pos);
        let Some(c) = cur.peek() else { break };
        let kind = match c {
            '#' => {
                cur.eat_while(|c| c != '\n');
                continue;
            }
            '(' => {
                cur.bump();
                TokenKind::LParen
            }
            ')' => {
                cur.bump();
                TokenKind::RParen
            }
            '=' => {
                cur.bump();
                TokenKind::Equals
            }
            '^' if cur.peek2() == Some('^') => {
                cur.bump();
                cur.bump();
                TokenKind::DoubleCaret
            }
            '<' => {
                cur.bump();
                cur.eat_while(|c| c != '>' && c != '\n' && !c.is_whitespace());
                if cur.peek() == Some('>') {
                    cur.bump();
                    TokenKind::FullIri(src[start + 1..cur.pos - 1].to_string())
                } else {
                    errors.push(ParseError::new(
                        line,
                        column,
                        "unterminated IRI, expected `>`",
                        &src[start..cur.pos],
                    ));
                    continue;
                }
            }
            '"' => {
                cur.bump();
                let mut value = String::new();
                let mut closed = false;
                while let Some(c) = cur.bump() {
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match cur.bump() {
                            Some('n') => value.push('\n'),
                            Some('t') => value.push('\t'),
                            Some(other) => value.push(other),
                            None => break,
                        },
                        other => value.push(other),
                    }
                }
                if !closed {
                    errors.push(ParseError::new(
                        line,
                        column,
                        "unterminated string literal",
                        &src[start..cur.pos.min(start + 20)],
                    ));
                    continue;
                }
                TokenKind::Literal(value)
            }
            '@' => {
                cur.bump();
                cur.eat_while(|c| c.is_alphanumeric() || c == '-');
                TokenKind::LangTag(src[start + 1..cur.pos].to_string())
            }
            c if c.is_ascii_digit() => {
                cur.eat_while(|c| c.is_ascii_digit());
                if matches!(cur.peek(), Some(c) if is_name_char(c) || c == ':') {
                    cur.eat_while(|c| is_name_char(c) || c == ':');
                    errors.push(ParseError::new(
                        line,
                        column,
                        "malformed token",
                        &src[start..cur.pos],
                    ));
                    continue;
                }
                match src[start..cur.pos].parse::<u32>() {
                    Ok(n) => TokenKind::Integer(n),
                    Err(_) => {
                        errors.push(ParseError::new(
                            line,
                            column,
                            "integer out of range",
                            &src[start..cur.pos],
                        ));
                        continue;
                    }
                }
            }
            c if is_name_start(c) || c == ':' => {
                cur.eat_while(is_name_char);
                let prefix_end = cur.pos;
                if cur.peek() == Some(':') {
                    cur.bump();
                    let local_start = cur.pos;
                    cur.eat_while(|c| is_name_char(c) || c == ':');
                    TokenKind::PrefixedName(
                        src[start..prefix_end].to_string(),
                        src[local_start..cur.pos].to_string(),
                    )
                } else {
                    TokenKind::Keyword(src[start..cur.pos].to_string())
                }
            }
            other => {
                cur.bump();
                errors.push(ParseError::new(
                    line,
                    column,
                    format!("unexpected character {other:?}"),
                    other.to_string(),
                ));
                continue;
            }
        };
        last_end = (cur.line, cur.column, cur.pos);
        tokens.push(Token {
            kind,
            line,
            column,
            start,
            end: cur.pos,
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line: last_end.0,
        column: last_end.1,
        start: last_end.2,
        end: last_end.2,
    });
    (tokens, errors)
}
