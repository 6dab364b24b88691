//! Reference implementations used as oracles. Nothing here calls into the
//! engine's update or scheduling code.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use twolevel::{Graph, PriorityPair};

/// Power iteration for x = (1 - d) + d * P^T x, where dangling vertices
/// contribute nothing (their mass is dropped, as in the engine).
pub fn power_iteration_pagerank(graph: &Graph, damping: f64, iterations: usize) -> Vec<f64> {
    let n = graph.vertex_count();
    let mut x = vec![1.0 - damping; n];
    let mut next = vec![0.0; n];
    for _ in 0..iterations {
        next.iter_mut().for_each(|v| *v = 1.0 - damping);
        for v in 0..n {
            let deg = graph.out_degree(v);
            if deg == 0 {
                continue;
            }
            let share = damping * x[v] / deg as f64;
            for &u in graph.out_neighbors(v) {
                next[u] += share;
            }
        }
        std::mem::swap(&mut x, &mut next);
    }
    x
}

pub fn normalized(v: &[f64]) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.iter().map(|x| x / s).collect()
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[derive(PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// Textbook Dijkstra with a binary heap; unreachable vertices stay infinite.
pub fn dijkstra(graph: &Graph, source: usize) -> Vec<f64> {
    let n = graph.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapItem(0.0, source));
    while let Some(HeapItem(d, v)) = heap.pop() {
        if settled[v] {
            continue;
        }
        settled[v] = true;
        for (&u, &w) in graph.out_neighbors(v).iter().zip(graph.out_weights(v)) {
            let nd = d + w;
            if nd < dist[u] {
                dist[u] = nd;
                heap.push(HeapItem(nd, u));
            }
        }
    }
    dist
}

/// Hand trace of the two-block comparison, written case by case from the
/// decision table rather than from the swap-and-negate listing.
pub fn cbp_oracle(a: &PriorityPair, b: &PriorityPair) -> bool {
    let (hi, lo, a_is_hi) = if a.p_avg >= b.p_avg { (a, b, true) } else { (b, a, false) };
    let flip = hi.node_un < lo.node_un
        && (hi.p_avg - lo.p_avg) < 0.2 * hi.p_avg
        && hi.p_avg * (hi.node_un as f64) < lo.p_avg * (lo.node_un as f64);
    // the higher-mean block wins unless the flip fires
    let hi_wins = !flip;
    if a_is_hi {
        hi_wins
    } else {
        !hi_wins
    }
}

fn strictly_before(a: &PriorityPair, b: &PriorityPair) -> bool {
    match (cbp_oracle(a, b), cbp_oracle(b, a)) {
        (true, false) => true,
        (false, true) => false,
        _ => a.block < b.block,
    }
}

/// Insertion sort under the oracle comparison with id tie-break.
pub fn insertion_sort(pairs: &[PriorityPair]) -> Vec<PriorityPair> {
    let mut out: Vec<PriorityPair> = Vec::with_capacity(pairs.len());
    for &p in pairs {
        let mut pos = out.len();
        while pos > 0 && strictly_before(&p, &out[pos - 1]) {
            pos -= 1;
        }
        out.insert(pos, p);
    }
    out
}

/// No adjacent pair of `sorted` is inverted under the oracle ordering.
pub fn locally_sorted(sorted: &[PriorityPair]) -> bool {
    sorted.windows(2).all(|w| !strictly_before(&w[1], &w[0]))
}

/// Stable top-down merge sort under the oracle ordering, splitting at
/// `len / 2`: the full-sort reference for top-`q` extraction.
pub fn merge_sort(pairs: &[PriorityPair]) -> Vec<PriorityPair> {
    if pairs.len() <= 1 {
        return pairs.to_vec();
    }
    let (l, r) = pairs.split_at(pairs.len() / 2);
    let (l, r) = (merge_sort(l), merge_sort(r));
    let mut out = Vec::with_capacity(pairs.len());
    let (mut i, mut j) = (0, 0);
    while i < l.len() && j < r.len() {
        if strictly_before(&r[j], &l[i]) {
            out.push(r[j]);
            j += 1;
        } else {
            out.push(l[i]);
            i += 1;
        }
    }
    out.extend_from_slice(&l[i..]);
    out.extend_from_slice(&r[j..]);
    out
}
