use crate::rips::{Simplex, SimplexTree};

/// An edge that joined two components. Components are named by their
/// smallest vertex; the larger-named one is absorbed.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeEvent {
    pub filtration_value: f64,
    pub edge: Simplex,
    pub absorbed_root: usize,
    pub surviving_root: usize,
}

/// Disjoint sets whose representatives track the minimum member.
struct Components {
    parent: Vec<usize>,
    rank: Vec<u8>,
    min: Vec<usize>,
}

impl Components {
    fn new(n: usize) -> Self {
        Components { parent: (0..n).collect(), rank: vec![0; n], min: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        let (hi, lo) = if self.rank[a] < self.rank[b] { (b, a) } else { (a, b) };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        self.min[hi] = self.min[hi].min(self.min[lo]);
    }
}

/// Replays the edges in filtration order and logs every merge.
pub fn compute_merge_events(tree: &SimplexTree) -> Vec<MergeEvent> {
    let mut sets = Components::new(tree.n_vertices());
    let mut events = Vec::new();
    for (u, v, value) in tree.edges_in_filtration_order() {
        let (ru, rv) = (sets.find(u), sets.find(v));
        if ru == rv {
            continue;
        }
        let (mu, mv) = (sets.min[ru], sets.min[rv]);
        events.push(MergeEvent {
            filtration_value: value,
            edge: Simplex::new(vec![u, v]).expect("edge has two distinct vertices"),
            absorbed_root: mu.max(mv),
            surviving_root: mu.min(mv),
        });
        sets.union(ru, rv);
    }
    events
}
