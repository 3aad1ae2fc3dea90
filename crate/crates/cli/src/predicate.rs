//! The `--where` filter language.
//!
//! ```text
//! expr  := or
//! or    := and ("or" and)*
//! and   := unary ("and" unary)*
//! unary := "not" unary | "(" expr ")" | field [op value]
//! op    := == | = | != | < | <= | > | >=   (≤ ≥ ≠ also accepted)
//! ```
//!
//! A bare field must be boolean. Comparisons against an undefined value
//! (such as `d` of the zero code) are false.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid --where expression: {0}")]
pub struct PredicateError(String);

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Text(String),
    Undefined,
}

/// Anything a predicate can be evaluated against.
pub trait Fields {
    /// `None` for unknown field names.
    fn field(&self, name: &str) -> Option<Value>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Predicate {
    Field(String),
    Compare(String, Op, Literal),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Literal {
    Int(i64),
    Word(String),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(n) => write!(f, "{n}"),
            Literal::Word(w) => f.write_str(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    Op(Op),
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<Token>, PredicateError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let (token, width) = match (c, next) {
            (c, _) if c.is_whitespace() => {
                i += 1;
                continue;
            }
            ('(', _) => (Token::Open, 1),
            (')', _) => (Token::Close, 1),
            ('=', Some('=')) => (Token::Op(Op::Eq), 2),
            ('=', _) => (Token::Op(Op::Eq), 1),
            ('!', Some('=')) => (Token::Op(Op::Ne), 2),
            ('<', Some('=')) => (Token::Op(Op::Le), 2),
            ('<', _) => (Token::Op(Op::Lt), 1),
            ('>', Some('=')) => (Token::Op(Op::Ge), 2),
            ('>', _) => (Token::Op(Op::Gt), 1),
            ('≤', _) => (Token::Op(Op::Le), 1),
            ('≥', _) => (Token::Op(Op::Ge), 1),
            ('≠', _) => (Token::Op(Op::Ne), 1),
            (c, _) if c.is_ascii_digit() || c == '-' => {
                let len = 1 + chars[i + 1..].iter().take_while(|c| c.is_ascii_digit()).count();
                let text: String = chars[i..i + len].iter().collect();
                let n = text
                    .parse()
                    .map_err(|_| PredicateError(format!("bad number {text:?}")))?;
                (Token::Int(n), len)
            }
            (c, _) if c.is_alphabetic() || c == '_' => {
                let len = chars[i..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_')
                    .count();
                (Token::Ident(chars[i..i + len].iter().collect()), len)
            }
            (c, _) => return Err(PredicateError(format!("unexpected character {c:?}"))),
        };
        tokens.push(token);
        i += width;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn keyword(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Token::Ident(w)) if w.eq_ignore_ascii_case(word)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Predicate, PredicateError> {
        let mut left = self.and()?;
        while self.keyword("or") {
            left = Predicate::Or(Box::new(left), Box::new(self.and()?));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Predicate, PredicateError> {
        let mut left = self.unary()?;
        while self.keyword("and") {
            left = Predicate::And(Box::new(left), Box::new(self.unary()?));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Predicate, PredicateError> {
        if self.keyword("not") {
            return Ok(Predicate::Not(Box::new(self.unary()?)));
        }
        match self.next() {
            Some(Token::Open) => {
                let inner = self.or()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(PredicateError("missing ')'".into())),
                }
            }
            Some(Token::Ident(name)) => {
                if let Some(Token::Op(op)) = self.peek().cloned() {
                    self.pos += 1;
                    let literal = match self.next() {
                        Some(Token::Int(n)) => Literal::Int(n),
                        Some(Token::Ident(w)) => Literal::Word(w),
                        _ => return Err(PredicateError(format!("missing value after {name}"))),
                    };
                    Ok(Predicate::Compare(name, op, literal))
                } else {
                    Ok(Predicate::Field(name))
                }
            }
            other => Err(PredicateError(format!("unexpected {other:?}"))),
        }
    }
}

impl Predicate {
    pub fn parse(input: &str) -> Result<Self, PredicateError> {
        let mut parser = Parser { tokens: tokenize(input)?, pos: 0 };
        if parser.tokens.is_empty() {
            return Err(PredicateError("empty expression".into()));
        }
        let p = parser.or()?;
        if parser.pos != parser.tokens.len() {
            return Err(PredicateError(format!("trailing input at token {}", parser.pos + 1)));
        }
        Ok(p)
    }

    /// Checks field names and types against `sample` so that typos fail
    /// before a sweep starts.
    pub fn validate(&self, sample: &impl Fields) -> Result<(), PredicateError> {
        self.eval(sample).map(|_| ())
    }

    pub fn eval(&self, fields: &impl Fields) -> Result<bool, PredicateError> {
        let lookup = |name: &str| {
            fields
                .field(name)
                .ok_or_else(|| PredicateError(format!("unknown field {name:?}")))
        };
        match self {
            Predicate::Field(name) => match lookup(name)? {
                Value::Bool(b) => Ok(b),
                Value::Undefined => Ok(false),
                _ => Err(PredicateError(format!("field {name:?} is not boolean"))),
            },
            Predicate::Compare(name, op, literal) => compare(name, lookup(name)?, *op, literal),
            Predicate::Not(p) => Ok(!p.eval(fields)?),
            Predicate::And(a, b) => Ok(a.eval(fields)? & b.eval(fields)?),
            Predicate::Or(a, b) => Ok(a.eval(fields)? | b.eval(fields)?),
        }
    }
}

fn compare(name: &str, value: Value, op: Op, literal: &Literal) -> Result<bool, PredicateError> {
    let ordering = match (&value, literal) {
        (Value::Undefined, _) => return Ok(false),
        (Value::Int(a), Literal::Int(b)) => a.cmp(b),
        (Value::Bool(a), Literal::Word(w)) => {
            let b = match w.to_ascii_lowercase().as_str() {
                "true" => true,
                "false" => false,
                _ => return Err(PredicateError(format!("{name} compares with true/false, not {w:?}"))),
            };
            a.cmp(&b)
        }
        (Value::Text(a), Literal::Word(w)) => a.to_ascii_lowercase().cmp(&w.to_ascii_lowercase()),
        _ => return Err(PredicateError(format!("cannot compare {name} with {literal}"))),
    };
    if !matches!(value, Value::Int(_)) && !matches!(op, Op::Eq | Op::Ne) {
        return Err(PredicateError(format!("{name} only supports == and !=")));
    }
    Ok(match op {
        Op::Eq => ordering.is_eq(),
        Op::Ne => ordering.is_ne(),
        Op::Lt => ordering.is_lt(),
        Op::Le => ordering.is_le(),
        Op::Gt => ordering.is_gt(),
        Op::Ge => ordering.is_ge(),
    })
}
