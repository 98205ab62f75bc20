//! Text and JSON forms of a graph.
//!
//! ```text
//! graph    := "graph" "{" decl* "}"
//! decl     := "vertices:" id ("," id)* ";"
//!           | "edge" id "->" id mult? ";"
//! mult     := "[" (INTEGER | "inf") "]"
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cardinality::Cardinality;
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_MULTIPLICITY};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, col, message: message.into() }
}

fn tokenize(text: &str) -> Result<(Vec<Token>, (usize, usize))> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                word.push(c);
                chars.next();
                col += 1;
            }
            let tok = if word.bytes().all(|b| b.is_ascii_digit()) { Tok::Int(word) } else { Tok::Ident(word) };
            tokens.push(Token { tok, line: tl, col: tc });
        } else {
            chars.next();
            col += 1;
            let punct = match c {
                '{' => "{",
                '}' => "}",
                ':' => ":",
                ',' => ",",
                ';' => ";",
                '[' => "[",
                ']' => "]",
                '-' if chars.peek() == Some(&'>') => {
                    chars.next();
                    col += 1;
                    "->"
                }
                other => return Err(syntax(tl, tc, format!("unexpected character `{other}`"))),
            };
            tokens.push(Token { tok: Tok::Punct(punct), line: tl, col: tc });
        }
    }
    Ok((tokens, (line, col)))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |t| (t.line, t.col))
    }

    fn next(&mut self, what: &str) -> Result<Token> {
        let (line, col) = self.here();
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| syntax(line, col, format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(tok)
    }

    fn punct(&mut self, p: &'static str) -> Result<()> {
        let t = self.next(&format!("`{p}`"))?;
        match t.tok {
            Tok::Punct(q) if q == p => Ok(()),
            other => Err(syntax(t.line, t.col, format!("expected `{p}`, found {}", describe(&other)))),
        }
    }

    /// Identifiers may be purely numeric.
    fn ident(&mut self) -> Result<Token> {
        let t = self.next("identifier")?;
        match &t.tok {
            Tok::Ident(_) | Tok::Int(_) => Ok(t),
            other => Err(syntax(t.line, t.col, format!("expected identifier, found {}", describe(other)))),
        }
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Punct(q), .. }) if *q == p)
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) | Tok::Int(s) => format!("`{s}`"),
        Tok::Punct(p) => format!("`{p}`"),
    }
}

fn text_of(t: &Token) -> &str {
    match &t.tok {
        Tok::Ident(s) | Tok::Int(s) => s,
        Tok::Punct(p) => p,
    }
}

/// Parses the textual graph format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let (tokens, eof) = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, eof };

    let head = p.ident()?;
    if text_of(&head) != "graph" {
        return Err(syntax(head.line, head.col, "expected `graph`"));
    }
    p.punct("{")?;

    let mut vertices: Vec<String> = Vec::new();
    let mut declared = HashSet::new();
    let mut edges = Vec::new();
    while !p.at_punct("}") {
        let kw = p.ident()?;
        match text_of(&kw) {
            "vertices" => {
                p.punct(":")?;
                loop {
                    let id = p.ident()?;
                    let name = text_of(&id).to_string();
                    if !declared.insert(name.clone()) {
                        return Err(Error::DuplicateVertex(name));
                    }
                    vertices.push(name);
                    if p.at_punct(",") {
                        p.punct(",")?;
                    } else {
                        break;
                    }
                }
                p.punct(";")?;
            }
            "edge" => {
                let src = p.ident()?;
                p.punct("->")?;
                let dst = p.ident()?;
                let mult = if p.at_punct("[") {
                    p.punct("[")?;
                    let m = p.next("multiplicity")?;
                    let mult = match &m.tok {
                        Tok::Ident(s) if s == "inf" => Cardinality::Omega,
                        Tok::Int(s) => match s.parse::<u64>() {
                            Ok(n) if n <= MAX_MULTIPLICITY => Cardinality::Finite(n),
                            _ => {
                                return Err(Error::MultiplicityOverflow {
                                    src: text_of(&src).into(),
                                    dst: text_of(&dst).into(),
                                })
                            }
                        },
                        other => {
                            return Err(syntax(m.line, m.col, format!("expected integer or `inf`, found {}", describe(other))))
                        }
                    };
                    p.punct("]")?;
                    mult
                } else {
                    Cardinality::Finite(1)
                };
                p.punct(";")?;
                for end in [&src, &dst] {
                    if !declared.contains(text_of(end)) {
                        return Err(Error::UndeclaredVertex { name: text_of(end).into(), line: end.line, col: end.col });
                    }
                }
                edges.push((text_of(&src).to_string(), text_of(&dst).to_string(), mult));
            }
            other => {
                return Err(syntax(kw.line, kw.col, format!("expected `vertices:` or `edge`, found `{other}`")));
            }
        }
    }
    p.punct("}")?;
    if let Some(t) = p.peek() {
        return Err(syntax(t.line, t.col, "trailing input after closing `}`"));
    }
    Graph::new(vertices, edges)
}

/// Canonical text form: sorted vertices, one line per aggregated edge,
/// multiplicity omitted when it is 1.
pub fn to_text(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    if !g.is_empty() {
        let names: Vec<&str> = g.names().iter().map(|n| n.as_str()).collect();
        out.push_str(&format!("  vertices: {};\n", names.join(", ")));
    }
    for e in g.edges() {
        out.push_str(&format!("  edge {} -> {}", g.name(e.src), g.name(e.dst)));
        if e.multiplicity != Cardinality::Finite(1) {
            out.push_str(&format!(" [{}]", e.multiplicity));
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

/// Multiplicity in JSON: a positive integer or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonMultiplicity {
    Finite(u64),
    Inf(InfTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfTag {
    #[serde(rename = "inf")]
    Inf,
}

impl From<Cardinality> for JsonMultiplicity {
    fn from(c: Cardinality) -> Self {
        match c {
            Cardinality::Finite(n) => JsonMultiplicity::Finite(n),
            Cardinality::Omega => JsonMultiplicity::Inf(InfTag::Inf),
        }
    }
}

impl From<JsonMultiplicity> for Cardinality {
    fn from(m: JsonMultiplicity) -> Self {
        match m {
            JsonMultiplicity::Finite(n) => Cardinality::Finite(n),
            JsonMultiplicity::Inf(_) => Cardinality::Omega,
        }
    }
}

/// Canonical JSON form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, JsonMultiplicity)>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            vertices: g.names().iter().map(|n| n.to_string()).collect(),
            edges: g
                .edges()
                .map(|e| (g.name(e.src).to_string(), g.name(e.dst).to_string(), e.multiplicity.into()))
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        Graph::new(self.vertices, self.edges.into_iter().map(|(s, d, m)| (s, d, m.into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn parses_e1() {
        let g = parse_graph(fixtures::E1_TEXT).unwrap();
        assert_eq!(g.names().iter().map(|n| n.as_str()).collect::<Vec<_>>(), ["v", "w"]);
        let v = g.vertex("v").unwrap();
        let w = g.vertex("w").unwrap();
        assert_eq!(g.multiplicity(v, v), Cardinality::Finite(1));
        assert_eq!(g.multiplicity(v, w), Cardinality::Omega);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edgeless_graph() {
        let g = parse_graph("graph { vertices: a; }").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        let empty = parse_graph("graph {}").unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn duplicate_lines_sum() {
        let text = "graph { vertices: a, b;\n edge a -> b;\n edge a -> b [2];\n}";
        let g = parse_graph(text).unwrap();
        let (a, b) = (g.vertex("a").unwrap(), g.vertex("b").unwrap());
        assert_eq!(g.multiplicity(a, b), Cardinality::Finite(3));
        let again = parse_graph(&to_text(&g)).unwrap();
        assert_eq!(again, g);
        assert_eq!(again.multiplicity(a, b), Cardinality::Finite(3));

        let with_inf = parse_graph("graph { vertices: a, b; edge a -> b [inf]; edge a -> b [4]; }").unwrap();
        assert_eq!(with_inf.multiplicity(a, b), Cardinality::Omega);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_graph("graph {\n  vertices: a;\n  edge a => a;\n}").unwrap_err();
        assert_eq!(err, Error::Syntax { line: 3, col: 10, message: "unexpected character `=`".into() });

        let err = parse_graph("graph {\n  vertices a;\n}").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, col: 12, .. }), "{err:?}");

        let err = parse_graph("graph { vertices: a;").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn undeclared_vertex() {
        let err = parse_graph("graph {\n vertices: a;\n edge a -> b;\n}").unwrap_err();
        assert_eq!(err, Error::UndeclaredVertex { name: "b".into(), line: 3, col: 12 });
    }

    #[test]
    fn zero_multiplicity_rejected() {
        let err = parse_graph("graph { vertices: a; edge a -> a [0]; }").unwrap_err();
        assert!(matches!(err, Error::ZeroMultiplicity { .. }));
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse_graph("# header\ngraph { # open\n vertices: x; # one\n}\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
    }

    #[test]
    fn json_shape() {
        let g = fixtures::e1();
        let json = serde_json::to_string(&GraphJson::from_graph(&g)).unwrap();
        assert_eq!(json, r#"{"vertices":["v","w"],"edges":[["v","v",1],["v","w","inf"]]}"#);
        let back: GraphJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_graph().unwrap(), g);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..6)
            .prop_flat_map(|n| {
                let mult = prop_oneof![(1u64..5).prop_map(Cardinality::Finite), Just(Cardinality::Omega)];
                (Just(n), proptest::collection::vec((0..n, 0..n, mult), 0..12))
            })
            .prop_map(|(n, es)| {
                let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let edges: Vec<_> = es.into_iter().map(|(s, d, m)| (names[s].clone(), names[d].clone(), m)).collect();
                Graph::new(names, edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_graph()) {
            let text = to_text(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(to_text(&back), text);
        }
    }
}
