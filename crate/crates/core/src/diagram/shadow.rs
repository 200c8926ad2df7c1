//! Unoriented 4-valent planar maps ("shadows") and their alternating lifts.

use std::collections::{HashMap, VecDeque};

use super::{ArcId, Crossing, DiagramError, LinkDiagram, OverIn};

/// A crossing port; ports 0..4 run counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Port {
    pub crossing: usize,
    pub port: usize,
}

impl Port {
    pub fn new(crossing: usize, port: usize) -> Self {
        Port { crossing, port }
    }

    fn id(self) -> usize {
        4 * self.crossing + self.port
    }

    fn from_id(id: usize) -> Self {
        Port { crossing: id / 4, port: id % 4 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Shadow {
    links: Vec<[Option<Port>; 4]>,
}

impl Shadow {
    pub fn new() -> Self {
        Shadow::default()
    }

    pub fn add_crossing(&mut self) -> usize {
        self.links.push([None; 4]);
        self.links.len() - 1
    }

    pub fn crossing_count(&self) -> usize {
        self.links.len()
    }

    pub fn connect(&mut self, a: Port, b: Port) {
        assert!(self.links[a.crossing][a.port].is_none(), "port {a:?} already connected");
        assert!(self.links[b.crossing][b.port].is_none(), "port {b:?} already connected");
        self.links[a.crossing][a.port] = Some(b);
        self.links[b.crossing][b.port] = Some(a);
    }

    fn partner(&self, id: usize) -> usize {
        let p = Port::from_id(id);
        self.links[p.crossing][p.port].expect("shadow has a dangling port").id()
    }

    /// The alternating diagram over this shadow. `polarity` picks one of the
    /// two mirror images. Strands after the first are oriented so that the
    /// lowest crossing they share with earlier strands is positive.
    pub fn to_alternating(&self, polarity: bool) -> Result<LinkDiagram, DiagramError> {
        let n = self.links.len();
        if n == 0 {
            return LinkDiagram::new(Vec::new(), 0);
        }
        // faces and their two-coloring
        let mut face = vec![usize::MAX; 4 * n];
        let mut nfaces = 0;
        for start in 0..4 * n {
            if face[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while face[d] == usize::MAX {
                face[d] = nfaces;
                let arrive = self.partner(d);
                d = 4 * (arrive / 4) + (arrive % 4 + 1) % 4;
            }
            nfaces += 1;
        }
        let mut adj = vec![Vec::new(); nfaces];
        for d in 0..4 * n {
            adj[face[d]].push(face[self.partner(d)]);
        }
        let mut white = vec![None; nfaces];
        white[0] = Some(false);
        let mut queue = VecDeque::from([0]);
        while let Some(f) = queue.pop_front() {
            for &g in &adj[f] {
                if white[g].is_none() {
                    white[g] = Some(!white[f].unwrap());
                    queue.push_back(g);
                }
            }
        }
        // under diagonal per crossing: true when ports 0/2 are under
        let under02: Vec<bool> = (0..n)
            .map(|c| {
                let corner0 = face[4 * c + 1];
                white[corner0].expect("connected shadow") ^ polarity
            })
            .collect();

        // strands as cycles of entry ports
        let mut strand_of = vec![usize::MAX; 4 * n];
        let mut strands: Vec<Vec<usize>> = Vec::new();
        for start in 0..4 * n {
            if strand_of[start] != usize::MAX {
                continue;
            }
            let k = strands.len();
            let mut entries = Vec::new();
            let mut entry = start;
            loop {
                let exit = 4 * (entry / 4) + (entry % 4 + 2) % 4;
                strand_of[entry] = k;
                strand_of[exit] = k;
                entries.push(entry);
                entry = self.partner(exit);
                if entry == start {
                    break;
                }
            }
            strands.push(entries);
        }
        let mut entering = vec![false; 4 * n];
        let sign_at = |entering: &[bool], c: usize| -> i32 {
            let under_ports = if under02[c] { [0, 2] } else { [1, 3] };
            let u_in = if entering[4 * c + under_ports[0]] { under_ports[0] } else { under_ports[1] };
            let o_in = (0..4).find(|&p| p % 2 != u_in % 2 && entering[4 * c + p]).unwrap();
            if (o_in + 4 - u_in) % 4 == 3 {
                1
            } else {
                -1
            }
        };
        for (k, entries) in strands.iter().enumerate() {
            for &e in entries {
                entering[e] = true;
            }
            if k == 0 {
                continue;
            }
            let shared = (0..n).find(|&c| {
                let mine = (0..4).any(|p| strand_of[4 * c + p] == k);
                let earlier = (0..4).any(|p| strand_of[4 * c + p] < k);
                mine && earlier
            });
            if let Some(c) = shared {
                if sign_at(&entering, c) < 0 {
                    for &e in entries {
                        let exit = 4 * (e / 4) + (e % 4 + 2) % 4;
                        entering[e] = false;
                        entering[exit] = true;
                    }
                }
            }
        }

        // arcs: one label per connection, keyed by its exit port
        let mut label: HashMap<usize, ArcId> = HashMap::new();
        let mut next = 1;
        for id in 0..4 * n {
            if !entering[id] {
                label.insert(id, ArcId(next));
                label.insert(self.partner(id), ArcId(next));
                next += 1;
            }
        }
        let crossings = (0..n)
            .map(|c| {
                let under_ports = if under02[c] { [0, 2] } else { [1, 3] };
                let u_in = if entering[4 * c + under_ports[0]] { under_ports[0] } else { under_ports[1] };
                let slots = std::array::from_fn(|k| label[&(4 * c + (u_in + k) % 4)]);
                let over_in = if entering[4 * c + (u_in + 1) % 4] { OverIn::Slot1 } else { OverIn::Slot3 };
                Crossing::new(slots, over_in, c)
            })
            .collect();
        Ok(LinkDiagram::new(crossings, 0)?.relabel_canonical())
    }
}
