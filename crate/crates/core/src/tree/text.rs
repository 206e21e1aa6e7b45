//! Text form of decorated trees.
//!
//! ```text
//! tree  := node
//! node  := "(" label child* ")"
//! label := "{" int ("," int)* "}"
//! child := "." | "~"? node
//! ```
//!
//! A node must list either all `m+1` children or none (all leaves). A `~`
//! marks the edge to that child as dashed.

use super::{DecoratedTree, Node};
use crate::error::{Error, ParseError, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    m: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> std::result::Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(ParseError::new(
                self.pos,
                format!("expected '{}', found '{}'", c as char, got as char),
            )),
            None => Err(ParseError::new(
                self.pos,
                format!("expected '{}', found end of input", c as char),
            )),
        }
    }

    fn int(&mut self) -> std::result::Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a label"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError::new(start, "label too large"))
    }

    fn label(&mut self) -> std::result::Result<Vec<usize>, ParseError> {
        self.expect(b'{')?;
        let start = self.pos;
        let mut labels = vec![self.int()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            labels.push(self.int()?);
        }
        self.expect(b'}')?;
        if labels.contains(&0) {
            return Err(ParseError::new(start, "labels start at 1"));
        }
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(ParseError::new(start, "repeated label in a node"));
        }
        Ok(labels)
    }

    fn node(&mut self) -> std::result::Result<Node, ParseError> {
        let open = self.pos;
        self.expect(b'(')?;
        let labels = self.label()?;
        let mut children = Vec::new();
        let mut dash_at = None;
        loop {
            match self.peek() {
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(b'.') => {
                    self.pos += 1;
                    children.push(None);
                }
                Some(b'~') => {
                    dash_at = Some((self.pos, children.len()));
                    self.pos += 1;
                    let mut child = self.node()?;
                    child.captive = true;
                    children.push(Some(child));
                }
                Some(b'(') => children.push(Some(self.node()?)),
                Some(c) => {
                    return Err(ParseError::new(
                        self.pos,
                        format!("unexpected '{}'", c as char),
                    ))
                }
                None => return Err(ParseError::new(self.pos, "unterminated node")),
            }
        }
        if children.is_empty() {
            children = vec![None; self.m + 1];
        } else if children.len() != self.m + 1 {
            return Err(ParseError::new(
                open,
                format!("node has {} children, expected {}", children.len(), self.m + 1),
            ));
        }
        let node = Node {
            labels,
            captive: false,
            children,
        };
        if let Some((at, rank)) = dash_at {
            if rank == 0 || node.cadet_rank() != Some(rank) {
                return Err(ParseError::new(at, "only the cadet edge may be dashed"));
            }
        }
        Ok(node)
    }
}

/// Parses a tree in the text form for the given `m`.
pub fn parse_tree(text: &str, m: usize) -> Result<DecoratedTree> {
    if m == 0 {
        return Err(Error::InvalidTree("m must be at least 1".into()));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        m,
    };
    let root = p.node()?;
    if let Some(c) = p.peek() {
        return Err(ParseError::new(p.pos, format!("trailing '{}'", c as char)).into());
    }
    DecoratedTree::new(m, root)
}

fn render_node(node: &Node, out: &mut String) {
    if node.captive {
        out.push('~');
    }
    out.push_str("({");
    let labels: Vec<String> = node.labels.iter().map(usize::to_string).collect();
    out.push_str(&labels.join(","));
    out.push('}');
    for c in &node.children {
        out.push(' ');
        match c {
            Some(c) => render_node(c, out),
            None => out.push('.'),
        }
    }
    out.push(')');
}

/// Canonical text form, always listing every child.
pub fn render_tree(tree: &DecoratedTree) -> String {
    let mut out = String::new();
    render_node(tree.root(), &mut out);
    out
}
