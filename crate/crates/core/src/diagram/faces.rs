//! Face tracing from the rotation system and checkerboard coloring.
//!
//! A dart `(pos, slot)` leaves crossing `pos` along the arc in `slot`. Its
//! successor is the slot counterclockwise after the one where the arc arrives,
//! so each orbit walks a face with the face on its right. The face on the
//! right of the dart arriving through slot `k` is the corner between slots
//! `k` and `k + 1`.

use std::collections::VecDeque;

use serde::Serialize;

use super::{ArcId, DiagramError, LinkDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Dart {
    pub crossing: usize,
    pub slot: usize,
}

/// Side of its arc, relative to the arc's orientation, on which a face lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub darts: Vec<Dart>,
    /// Boundary arcs in traversal order with the side the face occupies.
    pub arcs: Vec<(ArcId, Side)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    #[serde(skip)]
    dart_face: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face_of_dart(&self, pos: usize, slot: usize) -> usize {
        self.dart_face[4 * pos + slot]
    }

    /// Face filling the corner between `slot` and `slot + 1` of a crossing.
    pub fn corner(&self, pos: usize, slot: usize) -> usize {
        self.dart_face[4 * pos + (slot + 1) % 4]
    }

    /// Crossing positions touching each face.
    pub fn face_crossings(&self) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .map(|f| {
                let mut v: Vec<usize> = f.darts.iter().map(|d| d.crossing).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    }
}

/// Dart orbits of every crossing, in tracing order. Faces are lists of dart
/// ids `4 * pos + slot`.
pub(crate) fn trace_all(d: &LinkDiagram) -> Vec<Vec<usize>> {
    let partner = d.partner_table();
    let n = partner.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut dart = start;
        while !seen[dart] {
            seen[dart] = true;
            face.push(dart);
            let arrive = partner[dart];
            dart = 4 * (arrive / 4) + (arrive % 4 + 1) % 4;
        }
        out.push(face);
    }
    out
}

/// Faces of a connected diagram. A zero-crossing loop has no darts and yields
/// an empty set.
pub fn faces(d: &LinkDiagram) -> Result<FaceSet, DiagramError> {
    d.require_connected()?;
    Ok(build_face_set(d))
}

pub(crate) fn build_face_set(d: &LinkDiagram) -> FaceSet {
    let traced = trace_all(d);
    let mut dart_face = vec![0; 4 * d.crossing_count()];
    let faces = traced
        .into_iter()
        .enumerate()
        .map(|(fi, darts)| {
            let darts: Vec<Dart> = darts
                .into_iter()
                .map(|id| {
                    dart_face[id] = fi;
                    Dart { crossing: id / 4, slot: id % 4 }
                })
                .collect();
            let arcs = darts
                .iter()
                .map(|dt| {
                    let c = &d.crossings()[dt.crossing];
                    let side = if c.is_incoming(dt.slot) { Side::Left } else { Side::Right };
                    (c.slots()[dt.slot], side)
                })
                .collect();
            Face { darts, arcs }
        })
        .collect();
    FaceSet { faces, dart_face }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckerboardColoring {
    pub faces: FaceSet,
    pub colors: Vec<Color>,
}

impl CheckerboardColoring {
    pub fn swapped(&self) -> CheckerboardColoring {
        CheckerboardColoring {
            faces: self.faces.clone(),
            colors: self.colors.iter().map(|c| c.other()).collect(),
        }
    }

    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// The two faces along every arc differ in color.
    pub fn is_proper(&self, d: &LinkDiagram) -> bool {
        let partner = d.partner_table();
        (0..partner.len()).all(|dart| {
            let (pos, slot) = (dart / 4, dart % 4);
            let (p2, s2) = (partner[dart] / 4, partner[dart] % 4);
            self.colors[self.faces.face_of_dart(pos, slot)] != self.colors[self.faces.face_of_dart(p2, s2)]
        })
    }
}

/// Proper two-coloring of the faces of a connected diagram. The canonical
/// choice colors black the first traced face that has the lowest arc label
/// on its boundary.
pub fn checkerboard(d: &LinkDiagram) -> Result<CheckerboardColoring, DiagramError> {
    let faces = faces(d)?;
    let nf = faces.len();
    let partner = d.partner_table();
    let mut adj = vec![Vec::new(); nf];
    for dart in 0..partner.len() {
        let f = faces.face_of_dart(dart / 4, dart % 4);
        let g = faces.face_of_dart(partner[dart] / 4, partner[dart] % 4);
        adj[f].push(g);
    }
    let mut colors: Vec<Option<Color>> = vec![None; nf];
    if nf > 0 {
        let min_arc = faces.faces.iter().flat_map(|f| f.arcs.iter().map(|a| a.0)).min();
        let root = faces
            .faces
            .iter()
            .position(|f| f.arcs.iter().any(|a| Some(a.0) == min_arc))
            .unwrap_or(0);
        colors[root] = Some(Color::Black);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let cf = colors[f].expect("queued faces are colored");
            for &g in &adj[f] {
                match colors[g] {
                    None => {
                        colors[g] = Some(cf.other());
                        queue.push_back(g);
                    }
                    Some(cg) => assert_ne!(cg, cf, "face graph of a planar diagram is bipartite"),
                }
            }
        }
    }
    Ok(CheckerboardColoring {
        faces,
        colors: colors.into_iter().map(|c| c.expect("face graph is connected")).collect(),
    })
}
