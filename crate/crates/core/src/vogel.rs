//! Braiding a connected diagram with Vogel moves.
//!
//! A face is a defect when two of its boundary arcs lie on different Seifert
//! circles and both have the face on the same side. A Vogel move pushes one
//! of those arcs across the other inside the face (a Reidemeister II move),
//! adding one positive and one negative crossing; the writhe and the number
//! of Seifert circles are unchanged. Without defects the Seifert circles are
//! coherently nested and the braid word is read off along them.

use std::collections::{BTreeSet, HashMap};

use crate::braid::{BraidError, BraidWord};
use crate::diagram::{build_face_set, ArcId, Crossing, LinkDiagram, OverIn, Side};
use crate::seifert::{attachment_sides, graph_from_circles, seifert_circles, Attach, SeifertCircleSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Defect {
    face: usize,
    pushed: ArcId,
    target: ArcId,
    side: Side,
}

fn find_defect(d: &LinkDiagram, circles: &SeifertCircleSet) -> Option<Defect> {
    let faces = build_face_set(d);
    for (fi, face) in faces.faces.iter().enumerate() {
        let mut best: Option<Defect> = None;
        for (i, &(a, sa)) in face.arcs.iter().enumerate() {
            for &(b, sb) in &face.arcs[i + 1..] {
                if sa != sb || circles.circle_of(a) == circles.circle_of(b) {
                    continue;
                }
                let (pushed, target) = (a.min(b), a.max(b));
                let cand = Defect { face: fi, pushed, target, side: sa };
                if best.is_none_or(|x| (pushed, target) < (x.pushed, x.target)) {
                    best = Some(cand);
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Pushes `pushed` over `target` inside the defect face. Along `pushed` the
/// new crossings are met as X then Y, along `target` as Y then X.
fn vogel_move(d: &LinkDiagram, m: Defect) -> Result<LinkDiagram, BraidError> {
    let ends = d.arc_ends();
    let top = d.crossings().iter().flat_map(|c| c.slots()).map(|a| a.0).max().unwrap_or(0);
    let (e1, e2, e3) = (m.pushed, ArcId(top + 1), ArcId(top + 2));
    let (f1, f2, f3) = (m.target, ArcId(top + 3), ArcId(top + 4));
    let mut crossings: Vec<Crossing> = d.crossings().to_vec();
    let (eh, fh) = (ends[&m.pushed].head, ends[&m.target].head);
    let relabel = |c: &Crossing, slot: usize, arc: ArcId| {
        let mut slots = c.slots();
        slots[slot] = arc;
        Crossing::new(slots, c.over_in(), c.index())
    };
    crossings[eh.0] = relabel(&crossings[eh.0], eh.1, e3);
    crossings[fh.0] = relabel(&crossings[fh.0], fh.1, f3);
    let base = d.crossings().iter().map(|c| c.index() + 1).max().unwrap_or(0);
    let (x, y) = match m.side {
        Side::Right => (
            Crossing::new([f2, e1, f3, e2], OverIn::Slot1, base),
            Crossing::new([f1, e3, f2, e2], OverIn::Slot3, base + 1),
        ),
        Side::Left => (
            Crossing::new([f2, e2, f3, e1], OverIn::Slot3, base),
            Crossing::new([f1, e2, f2, e3], OverIn::Slot1, base + 1),
        ),
    };
    crossings.push(x);
    crossings.push(y);
    Ok(LinkDiagram::new(crossings, 0)?)
}

/// Result of braiding: the braided diagram and the number of moves used.
#[derive(Clone, Debug)]
pub struct Braided {
    pub diagram: LinkDiagram,
    pub moves: usize,
    pub word: BraidWord,
}

/// Applies Vogel moves until no defect face remains, then reads the word.
pub fn braid(d: &LinkDiagram) -> Result<Braided, BraidError> {
    d.require_connected()?;
    if d.crossing_count() == 0 {
        return Ok(Braided { diagram: d.clone(), moves: 0, word: BraidWord::new(1, Vec::new())? });
    }
    let c = d.crossing_count();
    let bound = (c + 2) * (c + 2) + 16;
    let mut cur = d.clone();
    let mut moves = 0;
    loop {
        let circles = seifert_circles(&cur);
        match find_defect(&cur, &circles) {
            None => break,
            Some(m) => {
                if moves == bound {
                    return Err(BraidError::NonTermination { moves, crossings: c });
                }
                cur = vogel_move(&cur, m)?;
                moves += 1;
            }
        }
    }
    let word = read_braid(&cur)?;
    Ok(Braided { diagram: cur, moves, word })
}

/// Braid word with one strand per Seifert circle and exponent sum equal to
/// the writhe, whose closure is isotopic to `d`.
pub fn vogel_transform(d: &LinkDiagram) -> Result<BraidWord, BraidError> {
    Ok(braid(d)?.word)
}

/// Reads the word of a diagram whose Seifert circles are coherently nested.
fn read_braid(d: &LinkDiagram) -> Result<BraidWord, BraidError> {
    let not_braided = |why: &str| BraidError::NotBraided(why.to_string());
    let circles = seifert_circles(d);
    let g = graph_from_circles(d, &circles).map_err(|e| not_braided(&e.to_string()))?;
    let s = circles.count();
    if s == 1 {
        return BraidWord::new(1, Vec::new());
    }
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); s];
    for e in &g.edges {
        nbrs[e.u].insert(e.v);
        nbrs[e.v].insert(e.u);
    }
    // side on which each neighbour sits
    let sides = attachment_sides(d, &circles);
    let mut side_of: HashMap<(usize, usize), Attach> = HashMap::new();
    for (k, e) in g.edges.iter().enumerate() {
        let c = d.crossings().iter().position(|c| c.index() == e.crossing).unwrap();
        let _ = k;
        let (under, over) = circles.incidence[c];
        for (me, other) in [(under, over), (over, under)] {
            let side = sides[me].iter().find(|x| x.0 == e.crossing).unwrap().1;
            match side_of.insert((me, other), side) {
                Some(prev) if prev != side => return Err(not_braided("a circle pair attaches on both sides")),
                _ => {}
            }
        }
    }
    let start = (0..s)
        .find(|&v| nbrs[v].len() == 1 && side_of[&(v, *nbrs[v].first().unwrap())] == Attach::Right)
        .ok_or_else(|| not_braided("no innermost circle"))?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < s {
        let next = nbrs[cur]
            .iter()
            .copied()
            .find(|&w| w != prev)
            .ok_or_else(|| not_braided("Seifert graph is not a path"))?;
        if side_of[&(cur, next)] != Attach::Right || side_of[&(next, cur)] != Attach::Left {
            return Err(not_braided("circles are not coherently nested"));
        }
        prev = cur;
        cur = next;
        order.push(cur);
    }
    if order.iter().any(|&v| nbrs[v].len() > 2) {
        return Err(not_braided("Seifert graph is not a path"));
    }
    let position: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    // seam: one arc per circle, consecutive arcs bounding a common face
    let faces = build_face_set(d);
    let ends = d.arc_ends();
    let right_face = |a: ArcId| {
        let (pos, slot) = ends[&a].tail;
        faces.face_of_dart(pos, slot)
    };
    let mut seam = vec![circles.circles[order[0]][0]];
    for &v in &order[1..] {
        let f = right_face(*seam.last().unwrap());
        let a = faces.faces[f]
            .arcs
            .iter()
            .find(|(a, side)| *side == Side::Left && circles.circle_of(*a) == Some(v))
            .ok_or_else(|| not_braided("seam cannot cross the next circle"))?
            .0;
        seam.push(a);
    }

    // precedence of crossings along each circle, read from the seam
    let n = d.crossing_count();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        let cyc = &circles.circles[v];
        let k = cyc.iter().position(|&a| a == seam[i]).unwrap();
        let heads: Vec<usize> = (0..cyc.len()).map(|t| ends[&cyc[(k + t) % cyc.len()]].head.0).collect();
        for w in heads.windows(2) {
            succ[w[0]].push(w[1]);
            indeg[w[1]] += 1;
        }
    }
    let letter = |pos: usize| -> i32 {
        let (a, b) = circles.incidence[pos];
        let lo = position[&a].min(position[&b]) as i32 + 1;
        lo * d.crossings()[pos].sign()
    };
    let mut ready: BTreeSet<(u32, usize)> =
        (0..n).filter(|&p| indeg[p] == 0).map(|p| (letter(p).unsigned_abs(), p)).collect();
    let mut letters = Vec::with_capacity(n);
    while let Some(&first) = ready.iter().next() {
        ready.remove(&first);
        let p = first.1;
        letters.push(letter(p));
        for &q in &succ[p] {
            indeg[q] -= 1;
            if indeg[q] == 0 {
                ready.insert((letter(q).unsigned_abs(), q));
            }
        }
    }
    if letters.len() != n {
        return Err(not_braided("crossing order along the circles is cyclic"));
    }
    BraidWord::new(s, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::invariants::gl_signature;

    #[test]
    fn braid_closures_are_read_back() {
        assert_eq!(vogel_transform(&pos_trefoil()).unwrap(), BraidWord::new(2, vec![1, 1, 1]).unwrap());
        assert_eq!(vogel_transform(&pos_hopf()).unwrap(), BraidWord::new(2, vec![1, 1]).unwrap());
        let w = vogel_transform(&fig8()).unwrap();
        assert_eq!(w.strands(), 3);
        assert_eq!(w.exponent_sum(), 0);
        assert_eq!(w.len(), 4);
        assert_eq!(vogel_transform(&unknot0()).unwrap(), BraidWord::new(1, vec![]).unwrap());
    }

    #[test]
    fn two_bridge_trefoil_is_braided() {
        let d = crate::two_bridge::two_bridge(&crate::two_bridge::ContinuedFraction::new(&[3]).unwrap()).unwrap();
        let w = vogel_transform(&d).unwrap();
        assert_eq!(w.strands(), seifert_circles(&d).count());
        assert_eq!(w.exponent_sum(), d.writhe());
        let before = gl_signature(&d).unwrap();
        let after = gl_signature(&w.closure()).unwrap();
        assert_eq!((before.sigma, before.nullity, &before.determinant), (after.sigma, after.nullity, &after.determinant));
        assert_eq!(before.sigma.abs(), 2);
    }

    #[test]
    fn disconnected_input_rejected() {
        let split = pos_trefoil().disjoint_union(&pos_hopf());
        assert!(matches!(vogel_transform(&split), Err(BraidError::Diagram(_))));
    }
}
