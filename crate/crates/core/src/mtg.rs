//! The line-oriented `mtg` text format.
//!
//! ```text
//! c any comment
//! p mtg <n> <t> <m>
//! s <part_id> <v> <v> ...
//! a <u> <v>
//! ```
//!
//! Plain digraphs use `p dig <n> <m>` and carry no `s` lines. Serialization
//! is canonical: the problem line, then parts by ascending id with ascending
//! vertices, then arcs in lexicographic order, with no comments.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, GraphError};
use crate::multipartite::{build_multipartite, MultipartiteTournament, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MtgError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("declared {declared} {what} but found {found}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Either kind of graph an `mtg` file can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Digraph(Digraph),
    Multipartite(MultipartiteTournament),
}

impl Instance {
    pub fn digraph(&self) -> &Digraph {
        match self {
            Instance::Digraph(d) => d,
            Instance::Multipartite(m) => m.digraph(),
        }
    }

    pub fn multipartite(&self) -> Option<&MultipartiteTournament> {
        match self {
            Instance::Multipartite(m) => Some(m),
            Instance::Digraph(_) => None,
        }
    }

    pub fn to_mtg(&self) -> String {
        match self {
            Instance::Digraph(d) => serialize_digraph(d),
            Instance::Multipartite(m) => serialize(m),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> MtgError {
    MtgError::Syntax {
        line,
        message: message.into(),
    }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, MtgError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("bad {what} {tok:?}")))
}

enum Header {
    Mtg { n: usize, t: usize, m: usize },
    Dig { n: usize, m: usize },
}

pub fn parse(text: &str) -> Result<Instance, MtgError> {
    let mut header: Option<Header> = None;
    let mut parts: Vec<Option<Vec<usize>>> = Vec::new();
    let mut arcs: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "second problem line"));
                }
                header = Some(match toks.next() {
                    Some("mtg") => {
                        let n = number(toks.next(), line, "vertex count")?;
                        let t = number(toks.next(), line, "part count")?;
                        let m = number(toks.next(), line, "arc count")?;
                        parts = vec![None; t];
                        Header::Mtg { n, t, m }
                    }
                    Some("dig") => {
                        let n = number(toks.next(), line, "vertex count")?;
                        let m = number(toks.next(), line, "arc count")?;
                        Header::Dig { n, m }
                    }
                    other => return Err(syntax(line, format!("unknown format {other:?}"))),
                });
            }
            "s" => {
                match header {
                    Some(Header::Mtg { .. }) => {}
                    Some(Header::Dig { .. }) => return Err(syntax(line, "part line in a plain digraph")),
                    None => return Err(syntax(line, "part line before problem line")),
                }
                let id = number(toks.next(), line, "part id")?;
                let slot = parts
                    .get_mut(id)
                    .ok_or_else(|| syntax(line, format!("part id {id} out of range")))?;
                if slot.is_some() {
                    return Err(syntax(line, format!("part {id} listed twice")));
                }
                let verts = toks
                    .map(|t| number(Some(t), line, "vertex"))
                    .collect::<Result<Vec<_>, _>>()?;
                *slot = Some(verts);
                continue;
            }
            "a" => {
                if header.is_none() {
                    return Err(syntax(line, "arc line before problem line"));
                }
                let u = number(toks.next(), line, "arc tail")?;
                let v = number(toks.next(), line, "arc head")?;
                arcs.push((u, v));
            }
            other => return Err(syntax(line, format!("unknown line type {other:?}"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }

    match header {
        None => Err(syntax(0, "no problem line")),
        Some(Header::Dig { n, m }) => {
            if arcs.len() != m {
                return Err(MtgError::CountMismatch {
                    what: "arcs",
                    declared: m,
                    found: arcs.len(),
                });
            }
            Ok(Instance::Digraph(Digraph::new(n, arcs)?))
        }
        Some(Header::Mtg { n, t, m }) => {
            let found = parts.iter().filter(|p| p.is_some()).count();
            if found != t {
                return Err(MtgError::CountMismatch {
                    what: "parts",
                    declared: t,
                    found,
                });
            }
            if arcs.len() != m {
                return Err(MtgError::CountMismatch {
                    what: "arcs",
                    declared: m,
                    found: arcs.len(),
                });
            }
            let parts: Vec<Vec<usize>> = parts.into_iter().flatten().collect();
            let covered: usize = parts.iter().map(Vec::len).sum();
            if covered != n {
                return Err(MtgError::CountMismatch {
                    what: "vertices",
                    declared: n,
                    found: covered,
                });
            }
            Ok(Instance::Multipartite(build_multipartite(parts, arcs)?))
        }
    }
}

pub fn serialize(d: &MultipartiteTournament) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "p mtg {} {} {}",
        d.vertex_count(),
        d.part_count(),
        d.arc_count()
    )
    .unwrap();
    for (id, part) in d.parts().iter().enumerate() {
        write!(out, "s {id}").unwrap();
        for v in part {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    write_arcs(&mut out, d.digraph());
    out
}

pub fn serialize_digraph(d: &Digraph) -> String {
    let mut out = format!("p dig {} {}\n", d.vertex_count(), d.arc_count());
    write_arcs(&mut out, d);
    out
}

fn write_arcs(out: &mut String, d: &Digraph) {
    for (u, v) in d.arcs() {
        writeln!(out, "a {u} {v}").unwrap();
    }
}
