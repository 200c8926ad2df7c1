//! Seifert circles, the signed Seifert graph and its spanning-tree statistics.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use crate::diagram::{ArcId, DiagramError, LinkDiagram};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeifertError {
    #[error("crossing {crossing} joins a Seifert circle to itself")]
    SelfLoopDetected { crossing: usize },
    #[error("Seifert graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram is not alternating")]
    NotAlternating,
}

/// Side of a Seifert circle, relative to its orientation, on which a crossing
/// attaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attach {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertCircleSet {
    /// Arc cycles in orientation order, starting at their lowest label.
    pub circles: Vec<Vec<ArcId>>,
    /// Zero-crossing circles; they are numbered after `circles`.
    pub free_loops: usize,
    /// Per crossing position: circles through its incoming under- and over-arc.
    pub incidence: Vec<(usize, usize)>,
    #[serde(skip)]
    arc_circle: HashMap<ArcId, usize>,
}

impl SeifertCircleSet {
    /// s(D).
    pub fn count(&self) -> usize {
        self.circles.len() + self.free_loops
    }

    pub fn circle_of(&self, arc: ArcId) -> Option<usize> {
        self.arc_circle.get(&arc).copied()
    }
}

/// Orbits of the orientation-preserving smoothing.
pub fn seifert_circles(d: &LinkDiagram) -> SeifertCircleSet {
    let ends = d.arc_ends();
    let xs = d.crossings();
    let next = |arc: ArcId| -> ArcId {
        let (pos, slot) = ends[&arc].head;
        let c = &xs[pos];
        if slot == 0 {
            c.slots()[c.over_out_slot()]
        } else {
            c.slots()[2]
        }
    };
    let mut labels: Vec<ArcId> = ends.keys().copied().collect();
    labels.sort();
    let mut arc_circle = HashMap::new();
    let mut circles = Vec::new();
    for start in labels {
        if arc_circle.contains_key(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut a = start;
        loop {
            arc_circle.insert(a, circles.len());
            cycle.push(a);
            a = next(a);
            if a == start {
                break;
            }
        }
        circles.push(cycle);
    }
    let incidence = xs
        .iter()
        .map(|c| (arc_circle[&c.slots()[0]], arc_circle[&c.slots()[c.over_in().slot()]]))
        .collect();
    SeifertCircleSet { circles, free_loops: d.free_loops(), incidence, arc_circle }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeifertEdge {
    pub u: usize,
    pub v: usize,
    pub sign: i32,
    /// Index of the crossing this edge stands for.
    pub crossing: usize,
}

/// Signed multigraph with one vertex per Seifert circle and one edge per crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertGraph {
    pub vertices: usize,
    pub edges: Vec<SeifertEdge>,
}

impl Serialize for SeifertGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json {
            vertices: usize,
            edges: Vec<(usize, usize, i32, usize)>,
        }
        Json { vertices: self.vertices, edges: self.edges.iter().map(|e| (e.u, e.v, e.sign, e.crossing)).collect() }
            .serialize(s)
    }
}

pub fn seifert_graph(d: &LinkDiagram) -> Result<SeifertGraph, SeifertError> {
    let circles = seifert_circles(d);
    graph_from_circles(d, &circles)
}

pub fn graph_from_circles(d: &LinkDiagram, circles: &SeifertCircleSet) -> Result<SeifertGraph, SeifertError> {
    let mut edges = Vec::with_capacity(d.crossing_count());
    for (c, &(a, b)) in d.crossings().iter().zip(&circles.incidence) {
        if a == b {
            return Err(SeifertError::SelfLoopDetected { crossing: c.index() });
        }
        edges.push(SeifertEdge { u: a.min(b), v: a.max(b), sign: c.sign(), crossing: c.index() });
    }
    Ok(SeifertGraph { vertices: circles.count(), edges })
}

impl SeifertGraph {
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for list in &mut adj {
            list.sort_by_key(|&(_, i)| self.edges[i].crossing);
        }
        adj
    }

    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        let mut count = 0;
        for s in 0..self.vertices {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    fn require_connected(&self) -> Result<(), SeifertError> {
        match self.component_count() {
            1 => Ok(()),
            components => Err(SeifertError::DisconnectedGraph { components }),
        }
    }

    /// Number of edges joining each adjacent pair of circles.
    pub fn pair_multiplicities(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for e in &self.edges {
            *m.entry((e.u, e.v)).or_insert(0) += 1;
        }
        m
    }

    /// Edge positions (into `edges`) whose removal disconnects the graph.
    pub fn bridges(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let n = self.vertices;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, edge used to reach it, next adjacency position)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, via, ref mut it)) = stack.last_mut() {
                if *it < adj[v].len() {
                    let (w, e) = adj[v][*it];
                    *it += 1;
                    if e == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(via);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub d: i64,
    pub d_plus: usize,
    pub d_minus: usize,
    /// Crossing indices of the tree edges.
    pub tree: Vec<usize>,
}

impl TreeStats {
    fn from_edges(g: &SeifertGraph, tree: Vec<usize>) -> TreeStats {
        let d_plus = tree.iter().filter(|&&i| g.edges[i].sign > 0).count();
        let d_minus = tree.len() - d_plus;
        TreeStats {
            d: d_plus as i64 - d_minus as i64,
            d_plus,
            d_minus,
            tree: tree.iter().map(|&i| g.edges[i].crossing).collect(),
        }
    }
}

/// d, d⁺ and d⁻ over the canonical spanning tree: breadth-first from circle 0,
/// taking edges in crossing-index order.
pub fn tree_stats(g: &SeifertGraph) -> Result<TreeStats, SeifertError> {
    g.require_connected()?;
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertices];
    let mut tree = Vec::new();
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                tree.push(e);
                queue.push_back(w);
            }
        }
    }
    Ok(TreeStats::from_edges(g, tree))
}

/// Statistics over a spanning tree grown by Kruskal on a random edge order.
pub fn random_tree_stats<R: Rng + ?Sized>(g: &SeifertGraph, rng: &mut R) -> Result<TreeStats, SeifertError> {
    g.require_connected()?;
    let mut order: Vec<usize> = (0..g.edges.len()).collect();
    order.shuffle(rng);
    let mut parent: Vec<usize> = (0..g.vertices).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut tree = Vec::new();
    for i in order {
        let (a, b) = (find(&mut parent, g.edges[i].u), find(&mut parent, g.edges[i].v));
        if a != b {
            parent[a] = b;
            tree.push(i);
        }
    }
    Ok(TreeStats::from_edges(g, tree))
}

/// Whether `trees` seeded random spanning trees all reproduce the canonical
/// d, d⁺ and d⁻.
pub fn tree_stats_stable(g: &SeifertGraph, trees: usize, seed: u64) -> Result<bool, SeifertError> {
    let base = tree_stats(g)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trees {
        let t = random_tree_stats(g, &mut rng)?;
        if (t.d, t.d_plus, t.d_minus) != (base.d, base.d_plus, base.d_minus) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No edge of the Seifert graph is a bridge.
pub fn is_reduced(g: &SeifertGraph) -> Result<bool, SeifertError> {
    g.require_connected()?;
    Ok(g.bridges().is_empty())
}

/// Sides on which crossings attach to each circle. For a crossing with the
/// over-strand entering through slot 3, the circle through the incoming
/// under-arc sees the other circle on its left and the circle through the
/// incoming over-arc sees it on its right; slot 1 reverses both.
pub fn attachment_sides(d: &LinkDiagram, circles: &SeifertCircleSet) -> Vec<Vec<(usize, Attach)>> {
    let mut sides = vec![Vec::new(); circles.count()];
    for (c, &(under, over)) in d.crossings().iter().zip(&circles.incidence) {
        let (u, o) = if c.sign() > 0 { (Attach::Left, Attach::Right) } else { (Attach::Right, Attach::Left) };
        sides[under].push((c.index(), u));
        sides[over].push((c.index(), o));
    }
    sides
}

/// Every Seifert circle has all its crossings attached on one side.
pub fn is_special(d: &LinkDiagram, circles: &SeifertCircleSet) -> Result<bool, SeifertError> {
    d.require_connected()?;
    Ok(attachment_sides(d, circles).iter().all(|s| s.windows(2).all(|w| w[0].1 == w[1].1)))
}

/// No two Seifert circles are joined by exactly one crossing. Defined for
/// alternating diagrams only.
pub fn is_dhl(d: &LinkDiagram, g: &SeifertGraph) -> Result<bool, SeifertError> {
    if !d.is_alternating() {
        return Err(SeifertError::NotAlternating);
    }
    Ok(g.pair_multiplicities().values().all(|&m| m >= 2))
}
