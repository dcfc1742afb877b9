use std::fmt::Write as _;

use crate::grammar::SemioticClass;

use super::ItnError;

/// One semiotic token: a class and its key-value fields in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub class: SemioticClass,
    pub fields: Vec<(String, String)>,
}

impl Token {
    pub fn new<K, V>(class: SemioticClass, fields: impl IntoIterator<Item = (K, V)>) -> Self
    where
        K: Into<String>,
        V: Into<String>,
    {
        Token {
            class,
            fields: fields
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
        }
    }

    /// A passthrough word.
    pub fn word(name: impl Into<String>) -> Self {
        Token::new(SemioticClass::Word, [("name", name.into())])
    }

    pub fn field(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn push_quoted(out: &mut String, value: &str) {
    out.push('"');
    for c in value.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
}

pub(crate) fn serialize_fields(out: &mut String, token: &Token, order: &[usize]) {
    let _ = write!(out, "{} {{ ", token.class);
    for &i in order {
        let (k, v) = &token.fields[i];
        out.push_str(k);
        out.push_str(": ");
        push_quoted(out, v);
        out.push(' ');
    }
    out.push('}');
}

/// Renders tokens as `class { key: "value" ... }` blocks separated by single spaces.
pub fn serialize(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let order: Vec<usize> = (0..t.fields.len()).collect();
        serialize_fields(&mut out, t, &order);
    }
    out
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ItnError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            _ => Err(ItnError::MalformedTag(self.pos)),
        }
    }

    fn bare(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| !c.is_whitespace()) {
            self.bump();
        }
        &self.text[start..self.pos]
    }

    fn key(&mut self) -> Result<String, ItnError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        if self.pos == start {
            return Err(ItnError::MalformedTag(start));
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn quoted(&mut self) -> Result<String, ItnError> {
        self.expect('"')?;
        let mut value = String::new();
        loop {
            let at = self.pos;
            match self.bump() {
                Some('"') => return Ok(value),
                Some('\\') => match self.bump() {
                    Some(c @ ('"' | '\\')) => value.push(c),
                    _ => return Err(ItnError::MalformedTag(at)),
                },
                Some(c) => value.push(c),
                None => return Err(ItnError::MalformedTag(at)),
            }
        }
    }

    fn token(&mut self) -> Result<Token, ItnError> {
        let start = self.pos;
        let name = self.bare();
        let after_name = self.pos;
        self.skip_ws();
        if self.peek() != Some('{') {
            if name.contains(['{', '}', '"']) {
                return Err(ItnError::MalformedTag(start));
            }
            self.pos = after_name;
            return Ok(Token::word(name));
        }
        let class: SemioticClass = name.parse().map_err(ItnError::UnknownClass)?;
        self.bump();
        let mut fields: Vec<(String, String)> = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('}') => {
                    self.bump();
                    break;
                }
                None => return Err(ItnError::MalformedTag(self.pos)),
                Some(_) => {
                    let key_at = self.pos;
                    let key = self.key()?;
                    self.expect(':')?;
                    self.skip_ws();
                    let value = self.quoted()?;
                    if fields.iter().any(|(k, _)| *k == key) {
                        return Err(ItnError::MalformedTag(key_at));
                    }
                    fields.push((key, value));
                    if !self.peek().is_some_and(|c| c.is_whitespace() || c == '}') {
                        return Err(ItnError::MalformedTag(self.pos));
                    }
                }
            }
        }
        if fields.is_empty() {
            return Err(ItnError::MalformedTag(start));
        }
        Ok(Token { class, fields })
    }
}

/// Parses a tagged string into tokens in textual order. Plain words
/// between tag blocks become passthrough tokens.
pub fn parse(tagged: &str) -> Result<Vec<Token>, ItnError> {
    let mut p = Parser {
        text: tagged,
        pos: 0,
    };
    let mut tokens = Vec::new();
    loop {
        p.skip_ws();
        if p.peek().is_none() {
            return Ok(tokens);
        }
        tokens.push(p.token()?);
    }
}
