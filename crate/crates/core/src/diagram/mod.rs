//! Oriented link diagrams in PD form.
//!
//! A crossing lists its four incident arcs counterclockwise, starting at the
//! incoming under-strand. The under-strand therefore always runs from slot 0
//! to slot 2, and the over-strand occupies slots 1 and 3 in one of two
//! directions, recorded by [`OverIn`]. The sign convention matches the usual
//! KnotTheory/KnotInfo one: a crossing is positive when the over-strand enters
//! through slot 3.

mod faces;
mod pd;
mod shadow;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub(crate) use faces::build_face_set;
pub use faces::{checkerboard, faces, CheckerboardColoring, Color, Dart, Face, FaceSet, Side};
pub use pd::{parse_pd, parse_pd_json, to_json, to_json_string, to_pd_string, JsonCrossing, JsonDiagram};
pub use shadow::{Port, Shadow};

/// Label of an oriented edge segment running between two crossing slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub u32);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Slot through which the over-strand enters a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverIn {
    Slot1,
    Slot3,
}

impl OverIn {
    pub fn slot(self) -> usize {
        match self {
            OverIn::Slot1 => 1,
            OverIn::Slot3 => 3,
        }
    }

    pub fn from_slot(slot: usize) -> Option<Self> {
        match slot {
            1 => Some(OverIn::Slot1),
            3 => Some(OverIn::Slot3),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    slots: [ArcId; 4],
    over_in: OverIn,
    index: usize,
}

impl Crossing {
    pub fn new(slots: [ArcId; 4], over_in: OverIn, index: usize) -> Self {
        Crossing { slots, over_in, index }
    }

    pub fn slots(&self) -> [ArcId; 4] {
        self.slots
    }

    pub fn over_in(&self) -> OverIn {
        self.over_in
    }

    /// Stable identifier, the crossing's position in the source notation.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn sign(&self) -> i32 {
        match self.over_in {
            OverIn::Slot3 => 1,
            OverIn::Slot1 => -1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        4 - self.over_in.slot()
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in.slot()
    }

    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// Same crossing with the over- and under-strands exchanged.
    pub fn mirrored(&self) -> Crossing {
        let s = self.over_in.slot();
        let slots = std::array::from_fn(|k| self.slots[(s + k) % 4]);
        let over_in = if s == 1 { OverIn::Slot3 } else { OverIn::Slot1 };
        Crossing { slots, over_in, index: self.index }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("malformed PD notation at byte {position}: {message}")]
    MalformedSyntax { position: usize, message: String },
    #[error("arc {arc} occurs {occurrences} times (expected exactly 2)")]
    ArcUsedTwice { arc: ArcId, occurrences: usize },
    #[error("arc {arc} has no consistent orientation")]
    OrientationInconsistent { arc: ArcId },
    #[error("orientation of the strand through arc {arc} cannot be inferred; annotate the over-strands")]
    OrientationAmbiguous { arc: ArcId },
    #[error("component {component} fails the sphere check: V - E + F = {euler}")]
    NonSphericalEmbedding { component: usize, euler: i64 },
    #[error("operation needs a connected diagram, got {components} components")]
    DisconnectedInput { components: usize },
}

/// One invariant violation found by [`LinkDiagram::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ArcUsage { arc: ArcId, occurrences: usize },
    Orientation { arc: ArcId, incoming: usize, outgoing: usize },
    NonSpherical { component: usize, euler: i64 },
}

impl Violation {
    fn into_error(self) -> DiagramError {
        match self {
            Violation::ArcUsage { arc, occurrences } => DiagramError::ArcUsedTwice { arc, occurrences },
            Violation::Orientation { arc, .. } => DiagramError::OrientationInconsistent { arc },
            Violation::NonSpherical { component, euler } => {
                DiagramError::NonSphericalEmbedding { component, euler }
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// `(V, E, F)` per connected component with crossings, when traceable.
    pub euler: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Where an arc leaves and enters: `(crossing position, slot)` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ArcEnds {
    pub tail: (usize, usize),
    pub head: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    name: Option<String>,
}

impl LinkDiagram {
    /// Builds and validates a diagram.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let d = LinkDiagram { crossings, free_loops, name: None };
        let report = d.validate();
        match report.violations.into_iter().next() {
            Some(v) => Err(v.into_error()),
            None => Ok(d),
        }
    }

    /// Builds a diagram without checking any invariant. Use [`validate`](Self::validate)
    /// to inspect the result.
    pub fn from_parts_unchecked(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        LinkDiagram { crossings, free_loops, name: None }
    }

    pub fn empty() -> Self {
        LinkDiagram { crossings: Vec::new(), free_loops: 0, name: None }
    }

    /// `loops` disjoint zero-crossing circles.
    pub fn unlink(loops: usize) -> Self {
        LinkDiagram { crossings: Vec::new(), free_loops: loops, name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 0
    }

    /// Reports every invariant violation; an empty list means the diagram is valid.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut occurrences: HashMap<ArcId, (usize, usize)> = HashMap::new();
        for c in &self.crossings {
            for (slot, &arc) in c.slots.iter().enumerate() {
                let e = occurrences.entry(arc).or_default();
                if c.is_incoming(slot) {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        let mut arcs: Vec<_> = occurrences.into_iter().collect();
        arcs.sort();
        for &(arc, (incoming, outgoing)) in &arcs {
            if incoming + outgoing != 2 {
                report.violations.push(Violation::ArcUsage { arc, occurrences: incoming + outgoing });
            } else if incoming != 1 {
                report.violations.push(Violation::Orientation { arc, incoming, outgoing });
            }
        }
        if !report.violations.is_empty() {
            return report;
        }

        let faces = faces::trace_all(self);
        let comp = self.crossing_component_ids();
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0usize; ncomp];
        let mut f = vec![0usize; ncomp];
        for &k in &comp {
            v[k] += 1;
        }
        for face in &faces {
            f[comp[face[0] / 4]] += 1;
        }
        for k in 0..ncomp {
            let euler = v[k] as i64 - 2 * v[k] as i64 + f[k] as i64;
            report.euler.push((v[k], 2 * v[k], f[k]));
            if euler != 2 {
                report.violations.push(Violation::NonSpherical { component: k, euler });
            }
        }
        report
    }

    /// Arc endpoints keyed by label. Only meaningful on a valid diagram.
    pub(crate) fn arc_ends(&self) -> HashMap<ArcId, ArcEnds> {
        let mut tails = HashMap::new();
        let mut heads = HashMap::new();
        for (pos, c) in self.crossings.iter().enumerate() {
            for (slot, &arc) in c.slots.iter().enumerate() {
                if c.is_incoming(slot) {
                    heads.insert(arc, (pos, slot));
                } else {
                    tails.insert(arc, (pos, slot));
                }
            }
        }
        tails
            .into_iter()
            .map(|(arc, tail)| (arc, ArcEnds { tail, head: heads[&arc] }))
            .collect()
    }

    /// Slot at the other end of the arc in each slot, indexed by `4 * pos + slot`.
    pub(crate) fn partner_table(&self) -> Vec<usize> {
        let mut first: HashMap<ArcId, usize> = HashMap::new();
        let mut partner = vec![usize::MAX; 4 * self.crossings.len()];
        for (pos, c) in self.crossings.iter().enumerate() {
            for (slot, &arc) in c.slots.iter().enumerate() {
                let here = 4 * pos + slot;
                if let Some(there) = first.remove(&arc) {
                    partner[here] = there;
                    partner[there] = here;
                } else {
                    first.insert(arc, here);
                }
            }
        }
        partner
    }

    /// Connected-component id of every crossing (by position), numbered in
    /// order of first appearance.
    pub(crate) fn crossing_component_ids(&self) -> Vec<usize> {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut seen: HashMap<ArcId, usize> = HashMap::new();
        for (pos, c) in self.crossings.iter().enumerate() {
            for &arc in &c.slots {
                if let Some(&other) = seen.get(&arc) {
                    let (a, b) = (find(&mut parent, pos), find(&mut parent, other));
                    parent[a.max(b)] = a.min(b);
                } else {
                    seen.insert(arc, pos);
                }
            }
        }
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        let mut root_id: HashMap<usize, usize> = HashMap::new();
        for pos in 0..n {
            let r = find(&mut parent, pos);
            ids[pos] = *root_id.entry(r).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        ids
    }

    /// Splits the diagram into connected pieces. Crossings keep their labels
    /// and indices; each free loop becomes its own zero-crossing piece.
    pub fn connected_components(&self) -> Vec<LinkDiagram> {
        let ids = self.crossing_component_ids();
        let ncomp = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut parts: Vec<Vec<Crossing>> = vec![Vec::new(); ncomp];
        for (c, &k) in self.crossings.iter().zip(&ids) {
            parts[k].push(c.clone());
        }
        let mut out: Vec<LinkDiagram> = parts
            .into_iter()
            .map(|crossings| LinkDiagram { crossings, free_loops: 0, name: None })
            .collect();
        out.extend((0..self.free_loops).map(|_| LinkDiagram::unlink(1)));
        out
    }

    pub fn component_count(&self) -> usize {
        let ids = self.crossing_component_ids();
        ids.iter().copied().max().map_or(0, |m| m + 1) + self.free_loops
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<(), DiagramError> {
        match self.component_count() {
            1 => Ok(()),
            components => Err(DiagramError::DisconnectedInput { components }),
        }
    }

    /// Number of closed curves (link components), free loops included.
    pub fn link_component_count(&self) -> usize {
        self.strands().len() + self.free_loops
    }

    /// Closed curves of the diagram as arc sequences in orientation order.
    pub fn strands(&self) -> Vec<Vec<ArcId>> {
        let ends = self.arc_ends();
        let mut labels: Vec<ArcId> = ends.keys().copied().collect();
        labels.sort();
        let mut visited = std::collections::HashSet::new();
        let mut out = Vec::new();
        for start in labels {
            if visited.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut arc = start;
            loop {
                visited.insert(arc);
                cycle.push(arc);
                let (pos, slot) = ends[&arc].head;
                arc = self.crossings[pos].slots[(slot + 2) % 4];
                if arc == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    /// Over and under passages alternate along every strand.
    pub fn is_alternating(&self) -> bool {
        self.arc_ends().values().all(|e| {
            Crossing::is_over(e.tail.1) != Crossing::is_over(e.head.1)
        })
    }

    /// Every crossing is positive; vacuously true without crossings.
    pub fn is_positive(&self) -> bool {
        self.crossings.iter().all(|c| c.sign() > 0)
    }

    /// Indices of the negative crossings.
    pub fn negative_crossings(&self) -> Vec<usize> {
        self.crossings.iter().filter(|c| c.sign() < 0).map(|c| c.index).collect()
    }

    /// Mirror image: every over/under assignment flipped.
    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram {
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
            free_loops: self.free_loops,
            name: self.name.clone(),
        }
    }

    /// Disjoint union; arcs of `other` are shifted past the labels used here
    /// and its crossings are reindexed after ours.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let shift = self.crossings.iter().flat_map(|c| c.slots).map(|a| a.0).max().unwrap_or(0);
        let base = self.crossings.iter().map(|c| c.index + 1).max().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            slots: c.slots.map(|a| ArcId(a.0 + shift)),
            over_in: c.over_in,
            index: base + c.index,
        }));
        LinkDiagram { crossings, free_loops: self.free_loops + other.free_loops, name: None }
    }

    /// Renumbers arcs 1, 2, ... along each strand and crossings 0, 1, ... in
    /// list order. Strands are taken in order of the first crossing they meet
    /// and start at an incoming under-arc where possible, which yields the
    /// usual successor numbering of PD codes.
    pub fn relabel_canonical(&self) -> LinkDiagram {
        let strands = self.strands();
        let ends = self.arc_ends();
        let first_pos = |s: &Vec<ArcId>| s.iter().map(|a| ends[a].head.0).min().unwrap_or(usize::MAX);
        let mut order: Vec<&Vec<ArcId>> = strands.iter().collect();
        order.sort_by_key(|s| (first_pos(s), s[0]));
        let mut map: HashMap<ArcId, ArcId> = HashMap::new();
        let mut next = 1u32;
        for s in order {
            let p = first_pos(s);
            let start = s
                .iter()
                .position(|a| ends[a].head == (p, 0))
                .or_else(|| s.iter().position(|a| ends[a].head.0 == p))
                .unwrap_or(0);
            for k in 0..s.len() {
                map.insert(s[(start + k) % s.len()], ArcId(next));
                next += 1;
            }
        }
        LinkDiagram {
            crossings: self
                .crossings
                .iter()
                .enumerate()
                .map(|(i, c)| Crossing { slots: c.slots.map(|a| map[&a]), over_in: c.over_in, index: i })
                .collect(),
            free_loops: self.free_loops,
            name: self.name.clone(),
        }
    }
}
