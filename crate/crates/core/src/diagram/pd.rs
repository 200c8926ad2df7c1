//! PD notation: parsing, orientation inference and serialization.
//!
//! Accepted text forms, separated by commas and/or whitespace:
//!
//! * `X(a,b,c,d)` or `X[a,b,c,d]`, optionally wrapped in `PD[...]`;
//! * `X(a,b,c,d;k)` with `k` in {1, 3}, the slot of the incoming over-arc
//!   (strict dialect, lossless);
//! * `Loop()` / `Loop(k)` for a zero-crossing component;
//! * the nested-list form `[[a,b,c,d],...]` used by KnotInfo.
//!
//! `#` starts a comment running to the end of the line. Unannotated crossings
//! are oriented from the under-strands (slot 0 is always incoming) and, for
//! strands that never pass under, by the successor-numbering rule. Anything
//! that remains ambiguous is rejected.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{ArcId, Crossing, DiagramError, LinkDiagram, OverIn};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Open(char),
    Close(char),
    Comma,
    Semi,
}

fn malformed(position: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::MalformedSyntax { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, DiagramError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b if b.is_ascii_whitespace() => i += 1,
            b'(' | b'[' => {
                out.push((i, Tok::Open(b as char)));
                i += 1;
            }
            b')' | b']' => {
                out.push((i, Tok::Close(b as char)));
                i += 1;
            }
            b',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            b';' => {
                out.push((i, Tok::Semi));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = text[start..i]
                    .parse::<u64>()
                    .map_err(|_| malformed(start, "integer out of range"))?;
                out.push((start, Tok::Int(v)));
            }
            b if b.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return Err(malformed(i, format!("unexpected character {:?}", text[i..].chars().next().unwrap()))),
        }
    }
    Ok(out)
}

/// A crossing before orientation is settled.
#[derive(Clone, Debug)]
struct RawCrossing {
    slots: [ArcId; 4],
    over_in: Option<OverIn>,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), DiagramError> {
        let at = self.here();
        match self.next() {
            Some(ref t) if t == want => Ok(()),
            _ => Err(malformed(at, format!("expected {what}"))),
        }
    }

    fn open(&mut self) -> Result<char, DiagramError> {
        let at = self.here();
        match self.next() {
            Some(Tok::Open(c)) => Ok(c),
            _ => Err(malformed(at, "expected '(' or '['")),
        }
    }

    fn close(&mut self, open: char) -> Result<(), DiagramError> {
        let want = if open == '(' { ')' } else { ']' };
        self.expect(&Tok::Close(want), &format!("'{want}'"))
    }

    fn arc(&mut self) -> Result<ArcId, DiagramError> {
        let at = self.here();
        match self.next() {
            Some(Tok::Int(v)) if (1..=u32::MAX as u64).contains(&v) => Ok(ArcId(v as u32)),
            Some(Tok::Int(_)) => Err(malformed(at, "arc labels must lie in 1..=4294967295")),
            _ => Err(malformed(at, "expected an arc label")),
        }
    }

    fn four_arcs(&mut self) -> Result<[ArcId; 4], DiagramError> {
        let a = self.arc()?;
        self.expect(&Tok::Comma, "','")?;
        let b = self.arc()?;
        self.expect(&Tok::Comma, "','")?;
        let c = self.arc()?;
        self.expect(&Tok::Comma, "','")?;
        let d = self.arc()?;
        Ok([a, b, c, d])
    }

    fn skip_comma(&mut self) {
        if self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
        }
    }

    /// Terms until `stop` (a closing bracket) or end of input.
    fn terms(&mut self, stop: Option<char>, xs: &mut Vec<RawCrossing>, loops: &mut usize) -> Result<(), DiagramError> {
        loop {
            match self.peek() {
                None if stop.is_none() => return Ok(()),
                None => return Err(malformed(self.end, "unterminated list")),
                Some(Tok::Close(c)) if Some(*c) == stop => return Ok(()),
                Some(Tok::Ident(name)) if name == "X" => {
                    self.pos += 1;
                    let open = self.open()?;
                    let slots = self.four_arcs()?;
                    let mut over_in = None;
                    if self.peek() == Some(&Tok::Semi) {
                        self.pos += 1;
                        let at = self.here();
                        over_in = match self.next() {
                            Some(Tok::Int(k)) => OverIn::from_slot(k as usize),
                            _ => None,
                        };
                        if over_in.is_none() {
                            return Err(malformed(at, "over-strand marker must be 1 or 3"));
                        }
                    }
                    self.close(open)?;
                    xs.push(RawCrossing { slots, over_in });
                }
                Some(Tok::Ident(name)) if name == "Loop" => {
                    self.pos += 1;
                    let open = self.open()?;
                    if let Some(Tok::Int(_)) = self.peek() {
                        self.pos += 1;
                    }
                    self.close(open)?;
                    *loops += 1;
                }
                _ => return Err(malformed(self.here(), "expected X(...) or Loop(...)")),
            }
            self.skip_comma();
        }
    }

    fn nested(&mut self, xs: &mut Vec<RawCrossing>) -> Result<(), DiagramError> {
        self.expect(&Tok::Open('['), "'['")?;
        if self.peek() == Some(&Tok::Close(']')) {
            self.pos += 1;
            return Ok(());
        }
        loop {
            self.expect(&Tok::Open('['), "'['")?;
            let slots = self.four_arcs()?;
            self.expect(&Tok::Close(']'), "']'")?;
            xs.push(RawCrossing { slots, over_in: None });
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::Close(']')) => return Ok(()),
                _ => return Err(malformed(self.here(), "expected ',' or ']'")),
            }
        }
    }
}

/// Parses PD text into a validated diagram with fully resolved orientation.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let mut raw = Vec::new();
    let mut loops = 0;
    match p.peek() {
        None => {}
        Some(Tok::Ident(name)) if name == "PD" => {
            p.pos += 1;
            let open = p.open()?;
            p.terms(Some(if open == '(' { ')' } else { ']' }), &mut raw, &mut loops)?;
            p.close(open)?;
        }
        Some(Tok::Open('[')) => p.nested(&mut raw)?,
        _ => p.terms(None, &mut raw, &mut loops)?,
    }
    if p.pos < p.toks.len() {
        return Err(malformed(p.here(), "trailing input"));
    }
    let crossings = orient(raw)?;
    LinkDiagram::new(crossings, loops)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    In,
    Out,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
        }
    }
}

/// Resolves the over-strand direction of every unannotated crossing.
fn orient(raw: Vec<RawCrossing>) -> Result<Vec<Crossing>, DiagramError> {
    let mut occ: HashMap<ArcId, Vec<usize>> = HashMap::new();
    for (pos, c) in raw.iter().enumerate() {
        for (slot, &a) in c.slots.iter().enumerate() {
            occ.entry(a).or_default().push(4 * pos + slot);
        }
    }
    let mut labels: Vec<ArcId> = occ.keys().copied().collect();
    labels.sort();
    for &a in &labels {
        if occ[&a].len() != 2 {
            return Err(DiagramError::ArcUsedTwice { arc: a, occurrences: occ[&a].len() });
        }
    }
    let partner = |id: usize| -> usize {
        let a = raw[id / 4].slots[id % 4];
        let o = &occ[&a];
        if o[0] == id { o[1] } else { o[0] }
    };

    let mut dir: Vec<Option<Dir>> = vec![None; 4 * raw.len()];
    for (pos, c) in raw.iter().enumerate() {
        dir[4 * pos] = Some(Dir::In);
        dir[4 * pos + 2] = Some(Dir::Out);
        if let Some(o) = c.over_in {
            dir[4 * pos + o.slot()] = Some(Dir::In);
            dir[4 * pos + (o.slot() + 2) % 4] = Some(Dir::Out);
        }
    }

    // Settles slot `id` and everything it forces.
    fn settle(
        raw: &[RawCrossing],
        dir: &mut [Option<Dir>],
        partner: &dyn Fn(usize) -> usize,
        id: usize,
        value: Dir,
    ) -> Result<(), DiagramError> {
        let mut stack = vec![(id, value)];
        while let Some((id, value)) = stack.pop() {
            match dir[id] {
                Some(v) if v == value => continue,
                Some(_) => return Err(DiagramError::OrientationInconsistent { arc: raw[id / 4].slots[id % 4] }),
                None => {
                    dir[id] = Some(value);
                    stack.push((partner(id), value.flip()));
                    let across = 4 * (id / 4) + (id % 4 + 2) % 4;
                    stack.push((across, value.flip()));
                }
            }
        }
        Ok(())
    }

    for id in 0..dir.len() {
        if let Some(v) = dir[id] {
            let other = partner(id);
            match dir[other] {
                Some(w) if w == v => {
                    return Err(DiagramError::OrientationInconsistent { arc: raw[id / 4].slots[id % 4] })
                }
                Some(_) => {}
                None => settle(&raw, &mut dir, &partner, other, v.flip())?,
            }
        }
    }

    // Strands that never pass under: successor rule.
    for pos in 0..raw.len() {
        if dir[4 * pos + 1].is_some() {
            continue;
        }
        let [_, b, _, d] = raw[pos].slots;
        // arcs of the strand through this over-crossing
        let mut strand = Vec::new();
        let start = 4 * pos + 1;
        let mut id = start;
        loop {
            strand.push(raw[id / 4].slots[id % 4].0 as u64);
            let across = 4 * (id / 4) + (id % 4 + 2) % 4;
            id = partner(across);
            if id == start {
                break;
            }
        }
        strand.sort_unstable();
        strand.dedup();
        let (lo, hi) = (strand[0], *strand.last().unwrap());
        let contiguous = hi - lo + 1 == strand.len() as u64;
        let succ = |x: u64| if x == hi { lo } else { x + 1 };
        let (b, d) = (b.0 as u64, d.0 as u64);
        let forward = contiguous && d == succ(b);
        let backward = contiguous && b == succ(d);
        let value = match (forward, backward) {
            (true, false) => Dir::In,
            (false, true) => Dir::Out,
            _ => return Err(DiagramError::OrientationAmbiguous { arc: ArcId(b as u32) }),
        };
        settle(&raw, &mut dir, &partner, 4 * pos + 1, value)?;
    }

    Ok(raw
        .iter()
        .enumerate()
        .map(|(pos, c)| {
            let over_in = if dir[4 * pos + 1] == Some(Dir::In) { OverIn::Slot1 } else { OverIn::Slot3 };
            Crossing::new(c.slots, over_in, pos)
        })
        .collect())
}

/// Strict-dialect text, crossings sorted by index. Stable byte for byte.
pub fn to_pd_string(d: &LinkDiagram) -> String {
    let mut xs: Vec<&Crossing> = d.crossings().iter().collect();
    xs.sort_by_key(|c| c.index());
    let mut terms: Vec<String> = xs
        .iter()
        .map(|c| {
            let [a, b, cc, dd] = c.slots();
            format!("X({a},{b},{cc},{dd};{})", c.over_in().slot())
        })
        .collect();
    terms.extend((0..d.free_loops()).map(|_| "Loop()".to_string()));
    terms.join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonCrossing {
    pub slots: [u32; 4],
    pub over_in: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonDiagram {
    pub crossings: Vec<JsonCrossing>,
    #[serde(default)]
    pub free_loops: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

pub fn to_json(d: &LinkDiagram) -> JsonDiagram {
    let mut xs: Vec<&Crossing> = d.crossings().iter().collect();
    xs.sort_by_key(|c| c.index());
    JsonDiagram {
        crossings: xs
            .iter()
            .map(|c| JsonCrossing { slots: c.slots().map(|a| a.0), over_in: c.over_in().slot() as u8 })
            .collect(),
        free_loops: d.free_loops(),
        name: d.name().map(str::to_string),
    }
}

pub fn to_json_string(d: &LinkDiagram) -> String {
    serde_json::to_string(&to_json(d)).expect("diagram JSON serializes")
}

/// Parses the JSON mirror of the strict dialect.
/// Largest `free_loops` accepted from JSON.
pub const MAX_FREE_LOOPS: usize = 1 << 16;

pub fn parse_pd_json(text: &str) -> Result<LinkDiagram, DiagramError> {
    let j: JsonDiagram = serde_json::from_str(text).map_err(|e| malformed(e.column(), e.to_string()))?;
    let mut crossings = Vec::with_capacity(j.crossings.len());
    for (i, c) in j.crossings.iter().enumerate() {
        if c.slots.contains(&0) {
            return Err(malformed(0, format!("crossing {i}: arc labels must be positive")));
        }
        let over_in = OverIn::from_slot(c.over_in as usize)
            .ok_or_else(|| malformed(0, format!("crossing {i}: over_in must be 1 or 3")))?;
        crossings.push(Crossing::new(c.slots.map(ArcId), over_in, i));
    }
    if j.free_loops > MAX_FREE_LOOPS {
        return Err(malformed(0, format!("{} free loops exceeds the supported maximum", j.free_loops)));
    }
    let d = LinkDiagram::new(crossings, j.free_loops)?;
    Ok(match j.name {
        Some(n) => d.with_name(n),
        None => d,
    })
}
