//! ```text
//! diagram <name>
//! loops <k>
//! crossing <id> A=<in>:<out> B=<in>:<out> orient=<+|-> over=<A|B>
//! order <edge>[,<edge>...]
//! end
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use super::{content_lines, syntax};
use crate::diagram::{Crossing, CrossingId, Diagram, EdgeId, Passage, Sign, Strand};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramDocument {
    pub name: String,
    pub diagram: Diagram,
}

impl DiagramDocument {
    pub fn new(name: impl Into<String>, diagram: Diagram) -> DiagramDocument {
        DiagramDocument {
            name: name.into(),
            diagram,
        }
    }
}

struct Block {
    name: String,
    loops: Option<usize>,
    crossings: Vec<Crossing>,
    crossing_lines: HashMap<CrossingId, usize>,
    order: Option<(Vec<EdgeId>, usize)>,
}

/// Parses every `diagram` block in `text`.
pub fn parse_diagrams(text: &str) -> Result<Vec<DiagramDocument>> {
    let mut docs = Vec::new();
    let mut block: Option<Block> = None;
    for (line, content) in content_lines(text) {
        let (keyword, rest) = split_keyword(content);
        match (&mut block, keyword) {
            (None, "diagram") => {
                if rest.is_empty() {
                    return Err(syntax(line, "diagram needs a name"));
                }
                block = Some(Block {
                    name: rest.to_string(),
                    loops: None,
                    crossings: Vec::new(),
                    crossing_lines: HashMap::new(),
                    order: None,
                });
            }
            (None, other) => {
                return Err(syntax(line, format!("expected `diagram <name>`, found `{other}`")))
            }
            (Some(_), "end") => {
                let b = block.take().expect("inside a block");
                docs.push(finish(b, line)?);
            }
            (Some(b), "loops") => {
                if b.loops.is_some() {
                    return Err(syntax(line, "repeated `loops`"));
                }
                b.loops = Some(
                    rest.parse()
                        .map_err(|_| syntax(line, format!("bad loop count `{rest}`")))?,
                );
            }
            (Some(b), "crossing") => {
                let c = parse_crossing(rest, line)?;
                if b.crossing_lines.insert(c.id, line).is_some() {
                    return Err(syntax(line, format!("duplicate crossing id {}", c.id.0)));
                }
                b.crossings.push(c);
            }
            (Some(b), "order") => {
                if b.order.is_some() {
                    return Err(syntax(line, "repeated `order`"));
                }
                let edges = rest
                    .split(',')
                    .map(|t| parse_edge(t.trim(), line))
                    .collect::<Result<Vec<_>>>()?;
                b.order = Some((edges, line));
            }
            (Some(_), other) => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(b) = block {
        return Err(syntax(
            text.lines().count().max(1),
            format!("diagram `{}` is missing `end`", b.name),
        ));
    }
    Ok(docs)
}

/// Parses text holding exactly one `diagram` block.
pub fn parse_diagram(text: &str) -> Result<DiagramDocument> {
    let mut docs = parse_diagrams(text)?;
    match docs.len() {
        1 => Ok(docs.remove(0)),
        n => Err(syntax(1, format!("expected one diagram, found {n}"))),
    }
}

fn finish(b: Block, end_line: usize) -> Result<DiagramDocument> {
    let mut diagram = Diagram::new(b.crossings, b.loops.unwrap_or(0));
    let order_line = b.order.as_ref().map(|(_, l)| *l);
    if let Some((order, _)) = b.order {
        diagram = diagram.with_component_order(order);
    }
    if let Err(violations) = diagram.validate() {
        let v = &violations[0];
        let line = v
            .crossing()
            .and_then(|c| b.crossing_lines.get(&c).copied())
            .or(order_line)
            .unwrap_or(end_line);
        return Err(syntax(line, v.to_string()));
    }
    Ok(DiagramDocument {
        name: b.name,
        diagram,
    })
}

fn split_keyword(content: &str) -> (&str, &str) {
    match content.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (content, ""),
    }
}

fn parse_edge(token: &str, line: usize) -> Result<EdgeId> {
    match token.parse::<u32>() {
        Ok(v) if v > 0 => Ok(EdgeId(v)),
        _ => Err(syntax(line, format!("bad edge id `{token}`"))),
    }
}

fn parse_passage(value: &str, line: usize) -> Result<Passage> {
    let (i, o) = value
        .split_once(':')
        .ok_or_else(|| syntax(line, format!("expected <in>:<out>, found `{value}`")))?;
    Ok(Passage {
        incoming: parse_edge(i, line)?,
        outgoing: parse_edge(o, line)?,
    })
}

fn parse_crossing(rest: &str, line: usize) -> Result<Crossing> {
    let mut tokens = rest.split_whitespace();
    let id_token = tokens.next().ok_or_else(|| syntax(line, "crossing needs an id"))?;
    let id = id_token
        .parse::<u32>()
        .map(CrossingId)
        .map_err(|_| syntax(line, format!("bad crossing id `{id_token}`")))?;

    let (mut a, mut b, mut orient, mut over) = (None, None, None, None);
    for token in tokens {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected key=value, found `{token}`")))?;
        let slot_taken = match key {
            "A" => a.replace(parse_passage(value, line)?).is_some(),
            "B" => b.replace(parse_passage(value, line)?).is_some(),
            "orient" => {
                let s = match value {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    _ => return Err(syntax(line, format!("orient must be + or -, found `{value}`"))),
                };
                orient.replace(s).is_some()
            }
            "over" => {
                let s = match value {
                    "A" => Strand::A,
                    "B" => Strand::B,
                    _ => return Err(syntax(line, format!("over must be A or B, found `{value}`"))),
                };
                over.replace(s).is_some()
            }
            _ => return Err(syntax(line, format!("unknown field `{key}`"))),
        };
        if slot_taken {
            return Err(syntax(line, format!("repeated field `{key}`")));
        }
    }
    let missing = |what: &str| syntax(line, format!("crossing {} is missing {what}", id.0));
    Ok(Crossing {
        id,
        a: a.ok_or_else(|| missing("A"))?,
        b: b.ok_or_else(|| missing("B"))?,
        orient_ab: orient.ok_or_else(|| missing("orient"))?,
        over: over.ok_or_else(|| missing("over"))?,
    })
}

/// Canonical text of a document.
pub fn serialize_diagram(doc: &DiagramDocument) -> String {
    let d = &doc.diagram;
    let mut out = String::new();
    writeln!(out, "diagram {}", doc.name).unwrap();
    writeln!(out, "loops {}", d.free_loops()).unwrap();
    for c in d.crossings() {
        writeln!(
            out,
            "crossing {} A={}:{} B={}:{} orient={} over={}",
            c.id.0, c.a.incoming.0, c.a.outgoing.0, c.b.incoming.0, c.b.outgoing.0, c.orient_ab, c.over
        )
        .unwrap();
    }
    if let Some(order) = d.component_order().filter(|o| !o.is_empty()) {
        let edges: Vec<String> = order.iter().map(|e| e.0.to_string()).collect();
        writeln!(out, "order {}", edges.join(",")).unwrap();
    }
    out.push_str("end\n");
    out
}

impl std::str::FromStr for DiagramDocument {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_diagram(s)
    }
}
