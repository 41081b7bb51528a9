//! Plain-text setting format.
//!
//! ```text
//! # conifold
//! quiver 2
//! alpha 1 1
//! arrow 1 2 2
//! arrow 2 1 2
//! loops 1 0 0
//! ```
//!
//! Vertices are 1-indexed. `arrow` lines accumulate; `loops i u m` adds `u`
//! unmarked and `m` marked loops at `i`. A file may hold several blocks, each
//! starting with a `quiver` line.

use std::fmt::Write as _;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::quiver::MarkedQuiverSetting;

struct Block {
    line: usize,
    k: usize,
    alpha: Option<Vec<u32>>,
    arrows: Vec<u32>,
    marked: Vec<u32>,
}

impl Block {
    fn finish(self) -> Result<MarkedQuiverSetting> {
        let alpha = self.alpha.ok_or(Error::Parse {
            line: self.line,
            message: "block has no alpha line".into(),
        })?;
        MarkedQuiverSetting::from_flat(alpha, self.arrows, self.marked).map_err(|e| Error::Parse {
            line: self.line,
            message: e.to_string(),
        })
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, words: &[&str]) -> Result<Vec<u32>> {
    words
        .iter()
        .map(|w| {
            w.parse::<u32>()
                .map_err(|_| err(line, format!("expected a non-negative integer, found `{w}`")))
        })
        .collect()
}

fn vertex(line: usize, raw: u32, k: usize) -> Result<usize> {
    if raw == 0 || raw as usize > k {
        return Err(err(line, format!("vertex {raw} out of range 1..={k}")));
    }
    Ok(raw as usize - 1)
}

/// Parses every block in `text`.
pub fn parse_settings(text: &str) -> Result<Vec<MarkedQuiverSetting>> {
    let mut out = Vec::new();
    let mut cur: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let (head, rest) = (words[0], &words[1..]);
        if head == "quiver" {
            if let Some(b) = cur.take() {
                out.push(b.finish()?);
            }
            let n = numbers(line, rest)?;
            if n.len() != 1 || n[0] == 0 {
                return Err(err(line, "`quiver` takes one positive vertex count"));
            }
            let k = n[0] as usize;
            cur = Some(Block {
                line,
                k,
                alpha: None,
                arrows: vec![0; k * k],
                marked: vec![0; k],
            });
            continue;
        }
        let b = cur
            .as_mut()
            .ok_or_else(|| err(line, format!("`{head}` before any `quiver` line")))?;
        let n = numbers(line, rest)?;
        match head {
            "alpha" => {
                if n.len() != b.k {
                    return Err(err(
                        line,
                        format!("alpha has {} entries, expected {}", n.len(), b.k),
                    ));
                }
                b.alpha = Some(n);
            }
            "arrow" => {
                if n.len() != 3 {
                    return Err(err(line, "`arrow` takes: source target multiplicity"));
                }
                let (i, j) = (vertex(line, n[0], b.k)?, vertex(line, n[1], b.k)?);
                if i == j {
                    return Err(err(line, "use `loops` for loops"));
                }
                b.arrows[i * b.k + j] += n[2];
            }
            "loops" => {
                if n.len() != 3 {
                    return Err(err(line, "`loops` takes: vertex unmarked marked"));
                }
                let v = vertex(line, n[0], b.k)?;
                b.arrows[v * b.k + v] += n[1];
                b.marked[v] += n[2];
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    if let Some(b) = cur {
        out.push(b.finish()?);
    }
    Ok(out)
}

/// Parses text that must hold exactly one block.
pub fn parse_setting(text: &str) -> Result<MarkedQuiverSetting> {
    let mut all = parse_settings(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        n => Err(err(1, format!("expected one setting, found {n}"))),
    }
}

/// Emits the setting as given, without relabelling.
pub fn emit_raw(s: &MarkedQuiverSetting) -> String {
    let k = s.vertex_count();
    let mut out = String::new();
    writeln!(out, "quiver {k}").unwrap();
    let alpha: Vec<String> = s.alpha().iter().map(u32::to_string).collect();
    writeln!(out, "alpha {}", alpha.join(" ")).unwrap();
    for i in 0..k {
        for j in 0..k {
            if i != j && s.arrows(i, j) > 0 {
                writeln!(out, "arrow {} {} {}", i + 1, j + 1, s.arrows(i, j)).unwrap();
            }
        }
    }
    for v in 0..k {
        if s.loops(v) > 0 {
            writeln!(
                out,
                "loops {} {} {}",
                v + 1,
                s.unmarked_loops(v),
                s.marked_loops(v)
            )
            .unwrap();
        }
    }
    out
}

/// Emits the setting in canonical vertex order.
pub fn emit(s: &MarkedQuiverSetting) -> String {
    emit_raw(&canonical_form(s))
}
