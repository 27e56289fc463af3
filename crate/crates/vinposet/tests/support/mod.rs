//! Test-only oracles, kept independent of the library's search paths: the
//! occurrence oracle enumerates position subsets outright, and the DOT
//! checker is a tiny recursive-descent parser for the graph grammar.

use vinposet::{Permutation, VincularScheme};

/// Every occurrence of `pattern` in `text` under the adjacency `bits`, by
/// brute enumeration of all position subsets. Positions are 1-indexed and
/// the output is in lexicographic order by construction.
pub fn oracle_occurrences(pattern: &[u8], text: &[u8], bits: &[bool]) -> Vec<Vec<usize>> {
    assert_eq!(bits.len() + 1, pattern.len());
    let mut out = Vec::new();
    let mut subset = Vec::with_capacity(pattern.len());
    enumerate_subsets(text.len(), pattern.len(), 0, &mut subset, &mut |positions| {
        let adjacency_ok = positions
            .windows(2)
            .zip(bits)
            .all(|(w, &gap)| gap || w[1] == w[0] + 1);
        if adjacency_ok && same_relative_order(pattern, text, positions) {
            out.push(positions.iter().map(|&i| i + 1).collect());
        }
    });
    out
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    from: usize,
    subset: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if subset.len() == k {
        visit(subset);
        return;
    }
    let remaining = k - subset.len();
    for i in from..=n.saturating_sub(remaining) {
        subset.push(i);
        enumerate_subsets(n, k, i + 1, subset, visit);
        subset.pop();
    }
}

fn same_relative_order(pattern: &[u8], text: &[u8], positions: &[usize]) -> bool {
    for a in 0..pattern.len() {
        for b in a + 1..pattern.len() {
            if (pattern[a] < pattern[b]) != (text[positions[a]] < text[positions[b]]) {
                return false;
            }
        }
    }
    true
}

/// The set of patterns of each length contained in `text` under `scheme`,
/// again by enumerating position subsets; entry `m - 1` of the result holds
/// the patterns of length `m`.
pub fn oracle_content_sets(
    text: &Permutation,
    scheme: &VincularScheme,
) -> Vec<std::collections::BTreeSet<Permutation>> {
    let n = text.len();
    let values = text.values();
    let mut sets = vec![std::collections::BTreeSet::new(); n];
    for m in 1..=n {
        let bits: Vec<bool> = scheme.type_vector(m).bits().to_vec();
        let mut subset = Vec::with_capacity(m);
        enumerate_subsets(n, m, 0, &mut subset, &mut |positions| {
            let adjacency_ok = positions
                .windows(2)
                .zip(&bits)
                .all(|(w, &gap)| gap || w[1] == w[0] + 1);
            if adjacency_ok {
                let entries: Vec<i64> = positions.iter().map(|&i| values[i] as i64).collect();
                sets[m - 1].insert(vinposet::standardize(&entries).unwrap());
            }
        });
    }
    sets
}

/// Checks a string against the DOT grammar (graph | digraph, statement
/// lists with node/edge/attribute statements and anonymous subgraphs,
/// quoted or bare identifiers). Returns an error describing the first
/// offending token.
pub fn check_dot(input: &str) -> Result<(), String> {
    let tokens = tokenize(input)?;
    let mut parser = DotParser { tokens, at: 0 };
    parser.graph()?;
    if parser.at != parser.tokens.len() {
        return Err(format!("trailing tokens after graph body: {:?}", parser.peek()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Id(String),
    Symbol(char), // { } [ ] ; , =
    Edge,         // -> or --
}

fn tokenize(input: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' | '}' | '[' | ']' | ';' | ',' | '=' => {
                tokens.push(Token::Symbol(c));
                chars.next();
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some('>') | Some('-') => tokens.push(Token::Edge),
                    other => return Err(format!("bad edge operator: -{other:?}")),
                }
            }
            '"' => {
                chars.next();
                let mut id = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(escaped) => id.push(escaped),
                            None => return Err("unterminated escape".into()),
                        },
                        Some(other) => id.push(other),
                        None => return Err("unterminated quoted id".into()),
                    }
                }
                tokens.push(Token::Id(id));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut id = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        id.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Id(id));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(tokens)
}

struct DotParser {
    tokens: Vec<Token>,
    at: usize,
}

impl DotParser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.at).cloned();
        self.at += 1;
        token
    }

    fn expect_symbol(&mut self, symbol: char) -> Result<(), String> {
        match self.bump() {
            Some(Token::Symbol(c)) if c == symbol => Ok(()),
            other => Err(format!("expected {symbol:?}, found {other:?}")),
        }
    }

    fn expect_id(&mut self) -> Result<String, String> {
        match self.bump() {
            Some(Token::Id(id)) => Ok(id),
            other => Err(format!("expected identifier, found {other:?}")),
        }
    }

    fn graph(&mut self) -> Result<(), String> {
        let kind = self.expect_id()?;
        if kind != "graph" && kind != "digraph" {
            return Err(format!("expected graph or digraph, found {kind}"));
        }
        if matches!(self.peek(), Some(Token::Id(_))) {
            self.bump(); // optional graph name
        }
        self.block()
    }

    // '{' statement* '}'
    fn block(&mut self) -> Result<(), String> {
        self.expect_symbol('{')?;
        loop {
            match self.peek() {
                Some(Token::Symbol('}')) => {
                    self.bump();
                    return Ok(());
                }
                Some(Token::Symbol('{')) => {
                    self.block()?;
                    self.optional_semicolon();
                }
                Some(Token::Id(_)) => self.statement()?,
                other => return Err(format!("expected statement, found {other:?}")),
            }
        }
    }

    // node | edge chain | attribute assignment, with optional [attrs] and ';'
    fn statement(&mut self) -> Result<(), String> {
        self.expect_id()?;
        if matches!(self.peek(), Some(Token::Symbol('='))) {
            self.bump();
            self.expect_id()?;
            self.optional_semicolon();
            return Ok(());
        }
        while matches!(self.peek(), Some(Token::Edge)) {
            self.bump();
            self.expect_id()?;
        }
        if matches!(self.peek(), Some(Token::Symbol('['))) {
            self.attr_list()?;
        }
        self.optional_semicolon();
        Ok(())
    }

    // '[' (id '=' id ','?)* ']'
    fn attr_list(&mut self) -> Result<(), String> {
        self.expect_symbol('[')?;
        loop {
            match self.peek() {
                Some(Token::Symbol(']')) => {
                    self.bump();
                    return Ok(());
                }
                Some(Token::Id(_)) => {
                    self.bump();
                    self.expect_symbol('=')?;
                    self.expect_id()?;
                    if matches!(self.peek(), Some(Token::Symbol(',')) | Some(Token::Symbol(';'))) {
                        self.bump();
                    }
                }
                other => return Err(format!("expected attribute, found {other:?}")),
            }
        }
    }

    fn optional_semicolon(&mut self) {
        if matches!(self.peek(), Some(Token::Symbol(';'))) {
            self.bump();
        }
    }
}
