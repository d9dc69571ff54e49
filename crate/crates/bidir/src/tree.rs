//! Integer-labelled binary trees and their text format.
//!
//! The text format, shared by the lens and bigenerator modules and the CLI,
//! is `L` for a leaf and `(N <left> <label> <right>)` for a node, with
//! single spaces and decimal labels:
//! `(N (N L 0 L) 1 (N L 2 L))`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, i64, Box<Tree>),
}

impl Tree {
    pub fn node(left: Tree, label: i64, right: Tree) -> Tree {
        Tree::Node(Box::new(left), label, Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn label(&self) -> Option<i64> {
        match self {
            Tree::Leaf => None,
            Tree::Node(_, n, _) => Some(*n),
        }
    }

    pub fn left(&self) -> Option<&Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Node(l, _, _) => Some(l),
        }
    }

    pub fn right(&self) -> Option<&Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Node(_, _, r) => Some(r),
        }
    }
}

/// The worked example tree: `(N (N L 0 L) 1 (N L 2 L))`.
pub fn t0() -> Tree {
    Tree::node(Tree::node(Tree::Leaf, 0, Tree::Leaf), 1, Tree::node(Tree::Leaf, 2, Tree::Leaf))
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "L"),
            Tree::Node(l, n, r) => write!(f, "(N {l} {n} {r})"),
        }
    }
}

pub fn print_tree(t: &Tree) -> String {
    t.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeParseError {
    pub reason: String,
}

impl fmt::Display for TreeParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed tree text: {}", self.reason)
    }
}

impl std::error::Error for TreeParseError {}

fn tokenize(s: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in s.chars() {
        match c {
            '(' | ')' => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
                tokens.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
            }
            c => current.push(c),
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

fn parse_at(tokens: &[String], pos: usize) -> Result<(Tree, usize), TreeParseError> {
    let err = |reason: &str| TreeParseError { reason: reason.to_string() };
    match tokens.get(pos).map(String::as_str) {
        Some("L") => Ok((Tree::Leaf, pos + 1)),
        Some("(") => {
            if tokens.get(pos + 1).map(String::as_str) != Some("N") {
                return Err(err("expected N after '('"));
            }
            let (left, pos) = parse_at(tokens, pos + 2)?;
            let label_tok = tokens.get(pos).ok_or_else(|| err("missing label"))?;
            let label: i64 = label_tok
                .parse()
                .map_err(|_| err(&format!("bad label {label_tok:?}")))?;
            let (right, pos) = parse_at(tokens, pos + 1)?;
            if tokens.get(pos).map(String::as_str) != Some(")") {
                return Err(err("expected ')'"));
            }
            Ok((Tree::node(left, label, right), pos + 1))
        }
        Some(other) => Err(err(&format!("unexpected token {other:?}"))),
        None => Err(err("unexpected end of input")),
    }
}

pub fn parse_tree(s: &str) -> Result<Tree, TreeParseError> {
    let tokens = tokenize(s);
    let (tree, pos) = parse_at(&tokens, 0)?;
    if pos != tokens.len() {
        return Err(TreeParseError { reason: format!("trailing tokens after {pos}") });
    }
    Ok(tree)
}
