//! Weighted lowest stabbing queries.
//!
//! Given horizontal segments with weights on an `N x N` grid, report the
//! lowest segment stabbed by the vertical line `x = v` among those whose
//! weight lies in `[w1, w2]`. Segments live in a segment tree over `x`; each
//! node keeps its segments sorted by weight with a range-min over `(y, id)`.
//! Weight windows are located by fractional cascading: one binary search in a
//! global weight catalog, then at most one adjustment per tree level.

use crate::error::{LufError, Result};
use crate::rmq::SparseTable;
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedSegment {
    pub x_lo: u64,
    pub x_hi: u64,
    pub y: u64,
    pub weight: u64,
    pub id: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WlsqHit {
    pub id: usize,
    pub y: u64,
}

#[derive(Debug, Clone)]
struct Node {
    lo: usize,
    hi: usize,
    children: Option<(usize, usize)>,
    /// Own weights, ascending.
    weights: Vec<u64>,
    /// Range-min over `(y, id)` aligned with `weights`.
    best: Option<SparseTable<(u64, usize)>>,
    /// Cascade catalog: own weights merged with every other entry of each
    /// child's catalog.
    keys: Vec<u64>,
    /// For catalog position `p`: own entries among `keys[..p]`.
    own_lb: Vec<u32>,
    /// For catalog position `p`: one past the last sampled left (right)
    /// child entry among `keys[..p]`, as an index into the child's catalog.
    left_c: Vec<u32>,
    right_c: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct WlsqIndex {
    n: u64,
    size: usize,
    nodes: Vec<Node>,
    cascade: bool,
    /// Distinct weights of all segments, ascending.
    catalog: Vec<u64>,
    /// `root_bridge[g]`: lower bound of `catalog[g]` in the root's catalog.
    root_bridge: Vec<u32>,
}

#[derive(Clone, Copy)]
enum Tag {
    Own,
    Left(u32),
    Right(u32),
}

impl WlsqIndex {
    /// Builds the index with fractional cascading enabled.
    pub fn build(segments: &[WeightedSegment], n: u64) -> Result<Self> {
        Self::build_with(segments, n, true)
    }

    /// `cascade = false` replaces cascading by one binary search per node.
    pub fn build_with(segments: &[WeightedSegment], n: u64, cascade: bool) -> Result<Self> {
        for s in segments {
            if s.x_lo == 0 || s.x_lo > s.x_hi || s.x_hi > n {
                return Err(LufError::SegmentOutOfGrid { id: s.id, n });
            }
        }
        let mut idx = WlsqIndex {
            n,
            size: segments.len(),
            nodes: Vec::new(),
            cascade,
            catalog: Vec::new(),
            root_bridge: Vec::new(),
        };
        if segments.is_empty() {
            return Ok(idx);
        }
        let mut own: Vec<Vec<(u64, u64, usize)>> = Vec::new();
        idx.alloc(1, n as usize, &mut own);
        for s in segments {
            idx.insert(0, s, &mut own);
        }
        for (node, mut list) in idx.nodes.iter_mut().zip(own) {
            list.sort_unstable();
            node.weights = list.iter().map(|t| t.0).collect();
            if !list.is_empty() {
                node.best = Some(SparseTable::new(list.iter().map(|t| (t.1, t.2)).collect()));
            }
        }
        if cascade {
            for v in (0..idx.nodes.len()).rev() {
                idx.build_catalog(v);
            }
            let mut catalog: Vec<u64> = segments.iter().map(|s| s.weight).collect();
            catalog.sort_unstable();
            catalog.dedup();
            let root = &idx.nodes[0].keys;
            idx.root_bridge = catalog.iter().map(|&w| root.partition_point(|&k| k < w) as u32).collect();
            idx.catalog = catalog;
        }
        Ok(idx)
    }

    /// Nodes are numbered so that children come after their parent.
    fn alloc(&mut self, lo: usize, hi: usize, own: &mut Vec<Vec<(u64, u64, usize)>>) -> usize {
        let v = self.nodes.len();
        self.nodes.push(Node {
            lo,
            hi,
            children: None,
            weights: Vec::new(),
            best: None,
            keys: Vec::new(),
            own_lb: Vec::new(),
            left_c: Vec::new(),
            right_c: Vec::new(),
        });
        own.push(Vec::new());
        if lo < hi {
            let mid = (lo + hi) / 2;
            let l = self.alloc(lo, mid, own);
            let r = self.alloc(mid + 1, hi, own);
            self.nodes[v].children = Some((l, r));
        }
        v
    }

    fn insert(&self, v: usize, s: &WeightedSegment, own: &mut [Vec<(u64, u64, usize)>]) {
        let node = &self.nodes[v];
        let (lo, hi) = (s.x_lo as usize, s.x_hi as usize);
        if lo <= node.lo && node.hi <= hi {
            own[v].push((s.weight, s.y, s.id));
            return;
        }
        if let Some((l, r)) = node.children {
            if lo <= self.nodes[l].hi {
                self.insert(l, s, own);
            }
            if hi >= self.nodes[r].lo {
                self.insert(r, s, own);
            }
        }
    }

    fn build_catalog(&mut self, v: usize) {
        let mut entries: Vec<(u64, Tag)> = self.nodes[v].weights.iter().map(|&w| (w, Tag::Own)).collect();
        if let Some((l, r)) = self.nodes[v].children {
            for (c, tag) in [(l, Tag::Left as fn(u32) -> Tag), (r, Tag::Right as fn(u32) -> Tag)] {
                let keys = &self.nodes[c].keys;
                entries.extend((1..keys.len()).step_by(2).map(|i| (keys[i], tag(i as u32))));
            }
        }
        entries.sort_by_key(|e| e.0);
        let len = entries.len();
        let (mut own_lb, mut left_c, mut right_c) =
            (Vec::with_capacity(len + 1), Vec::with_capacity(len + 1), Vec::with_capacity(len + 1));
        let (mut o, mut lc, mut rc) = (0u32, 0u32, 0u32);
        for e in &entries {
            own_lb.push(o);
            left_c.push(lc);
            right_c.push(rc);
            match e.1 {
                Tag::Own => o += 1,
                Tag::Left(i) => lc = i + 1,
                Tag::Right(i) => rc = i + 1,
            }
        }
        own_lb.push(o);
        left_c.push(lc);
        right_c.push(rc);
        let node = &mut self.nodes[v];
        node.keys = entries.into_iter().map(|e| e.0).collect();
        node.own_lb = own_lb;
        node.left_c = left_c;
        node.right_c = right_c;
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Step budget for one query: `ceil(log2 |S|) + 4 ceil(log2 N)`.
    pub fn step_budget(&self) -> u64 {
        ceil_log2(self.size as u64) + 4 * ceil_log2(self.n)
    }

    /// Lowest stabbed segment with weight in `[w1, w2]`; ties go to the smaller id.
    pub fn query(&self, v: u64, w1: u64, w2: u64) -> Option<WlsqHit> {
        if self.size == 0 || v == 0 || v > self.n || w1 > w2 {
            return None;
        }
        let v = v as usize;
        let mut visits = 0u64;
        let mut steps = 0u64;
        let mut best: Option<(u64, usize)> = None;
        let mut consider = |node: &Node, a: usize, b: usize| {
            if a < b {
                let cand = node.best.as_ref().expect("non-empty node").min(a, b - 1);
                if best.is_none_or(|cur| cand < cur) {
                    best = Some(cand);
                }
            }
        };
        if self.cascade {
            // Bounds are tracked as catalog positions; `None` for w2 + 1 means past the end.
            let zero_low = w1 <= self.catalog[0];
            let mut p1 = if zero_low { 0 } else { self.root_pos(w1, &mut steps) };
            let upper = w2.checked_add(1);
            let mut p2 = match upper {
                Some(q) => self.root_pos(q, &mut steps),
                None => self.nodes[0].keys.len(),
            };
            let mut cur = 0usize;
            loop {
                visits += 1;
                let node = &self.nodes[cur];
                let a = if zero_low { 0 } else { node.own_lb[p1] as usize };
                let b = node.own_lb[p2] as usize;
                consider(node, a, b);
                let Some((l, r)) = node.children else { break };
                let (next, bridge) = if v <= self.nodes[l].hi { (l, &node.left_c) } else { (r, &node.right_c) };
                let keys = &self.nodes[next].keys;
                let descend = |p: usize, q: Option<u64>, steps: &mut u64| -> usize {
                    let c = bridge[p] as usize;
                    match q {
                        None => keys.len(),
                        Some(q) => {
                            *steps += 1;
                            if c < keys.len() && keys[c] < q {
                                c + 1
                            } else {
                                c
                            }
                        }
                    }
                };
                if !zero_low {
                    p1 = descend(p1, Some(w1), &mut steps);
                }
                p2 = descend(p2, upper, &mut steps);
                cur = next;
            }
        } else {
            let mut cur = 0usize;
            loop {
                visits += 1;
                let node = &self.nodes[cur];
                let a = lower_bound(&node.weights, w1, &mut steps);
                let b = match w2.checked_add(1) {
                    Some(q) => lower_bound(&node.weights, q, &mut steps),
                    None => node.weights.len(),
                };
                consider(node, a, b);
                let Some((l, r)) = node.children else { break };
                cur = if v <= self.nodes[l].hi { l } else { r };
            }
        }
        stats::wlsq_query(visits, steps, self.step_budget());
        best.map(|(y, id)| WlsqHit { id, y })
    }

    fn root_pos(&self, q: u64, steps: &mut u64) -> usize {
        let g = lower_bound(&self.catalog, q, steps);
        if g == self.catalog.len() {
            self.nodes[0].keys.len()
        } else {
            self.root_bridge[g] as usize
        }
    }

    pub fn heap_words(&self) -> u64 {
        let mut w = (self.catalog.len() + self.root_bridge.len()) as u64;
        for node in &self.nodes {
            w += 4 + node.weights.len() as u64 + node.keys.len() as u64;
            w += (node.own_lb.len() + node.left_c.len() + node.right_c.len()) as u64 / 2;
            w += node.best.as_ref().map_or(0, |b| 2 * b.heap_words());
        }
        w
    }
}

fn lower_bound(a: &[u64], q: u64, steps: &mut u64) -> usize {
    let (mut lo, mut hi) = (0usize, a.len());
    while lo < hi {
        *steps += 1;
        let mid = (lo + hi) / 2;
        if a[mid] < q {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

pub(crate) fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u64
    }
}
