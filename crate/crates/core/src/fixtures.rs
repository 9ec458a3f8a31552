//! Bundled graphs and placements.

use alloc::vec::Vec;

use crate::framework::Framework;
use crate::graph::Graph;
use crate::projective::ProjPoint;

/// Triangular prism on `p1..p6`; its three non-triangle edges are
/// `p1p2, p3p4, p5p6`.
pub const DESARGUES_EDGES: [(usize, usize); 9] =
    [(1, 2), (3, 4), (5, 6), (1, 4), (4, 5), (1, 5), (2, 3), (3, 6), (2, 6)];

/// `K_{3,3}` drawn as the hexagon `p1..p6` with its three long diagonals.
pub const PASCAL_EDGES: [(usize, usize); 9] =
    [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (1, 4), (2, 5), (3, 6)];

/// Rim `p1..p4` and hub `p5`.
pub const WHEEL5_EDGES: [(usize, usize); 8] =
    [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 5), (3, 5), (4, 5)];

/// Edge lines `p1p2, p3p4, p5p6` pass through the origin.
pub const DESARGUES_POS: [[i64; 3]; 6] = [[1, 0, 1], [2, 0, 1], [0, 1, 1], [0, 2, 1], [3, 3, 1], [2, 2, 1]];
pub const DESARGUES_NEG: [[i64; 3]; 6] = [[1, 0, 1], [2, 0, 1], [0, 1, 1], [0, 2, 1], [3, 3, 1], [2, 3, 1]];
/// Six points on the parabola `y = x²`.
pub const PASCAL_POS: [[i64; 3]; 6] = [[-2, 4, 1], [-1, 1, 1], [0, 0, 1], [1, 1, 1], [2, 4, 1], [3, 9, 1]];
pub const PASCAL_NEG: [[i64; 3]; 6] = [[-2, 4, 1], [-1, 1, 1], [0, 0, 1], [1, 1, 1], [2, 4, 1], [3, 10, 1]];
pub const WHEEL5: [[i64; 3]; 5] = [[0, 0, 1], [5, 1, 1], [5, 5, 1], [1, 4, 1], [4, 1, 1]];

pub fn desargues_graph() -> Graph {
    Graph::numbered(6, &DESARGUES_EDGES).expect("valid fixture")
}

pub fn pascal_graph() -> Graph {
    Graph::numbered(6, &PASCAL_EDGES).expect("valid fixture")
}

pub fn wheel5_graph() -> Graph {
    Graph::numbered(5, &WHEEL5_EDGES).expect("valid fixture")
}

pub fn complete_graph(n: usize) -> Graph {
    let mut e = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            e.push((a, b));
        }
    }
    Graph::numbered(n, &e).expect("valid graph")
}

pub fn place(g: Graph, coords: &[[i64; 3]]) -> Framework {
    let pts = coords.iter().map(|&c| ProjPoint::from_i64(c).expect("nonzero")).collect();
    Framework::new(g, pts).expect("valid fixture")
}

pub fn desargues_pos() -> Framework {
    place(desargues_graph(), &DESARGUES_POS)
}

pub fn desargues_neg() -> Framework {
    place(desargues_graph(), &DESARGUES_NEG)
}

pub fn pascal_pos() -> Framework {
    place(pascal_graph(), &PASCAL_POS)
}

pub fn pascal_neg() -> Framework {
    place(pascal_graph(), &PASCAL_NEG)
}

pub fn wheel5() -> Framework {
    place(wheel5_graph(), &WHEEL5)
}

/// Which bundled graph a graph is isomorphic to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Desargues,
    Pascal,
    Wheel5,
}

/// Finds a bundled graph isomorphic to `g` (brute force, up to 8 vertices).
/// The permutation maps fixture vertex `k` to vertex `perm[k]` of `g`.
pub fn recognize(g: &Graph) -> Option<(Family, Vec<usize>)> {
    let cands = [
        (Family::Desargues, desargues_graph()),
        (Family::Pascal, pascal_graph()),
        (Family::Wheel5, wheel5_graph()),
    ];
    for (fam, h) in cands {
        if let Some(p) = isomorphism(&h, g) {
            return Some((fam, p));
        }
    }
    None
}

/// An isomorphism `h → g` as a vertex map, if one exists (n ≤ 8).
pub fn isomorphism(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    if n != g.vertex_count() || h.edge_count() != g.edge_count() || n > 8 {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = alloc::vec![false; n];
    extend_iso(h, g, &mut perm, &mut used).then_some(perm)
}

fn extend_iso(h: &Graph, g: &Graph, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let k = perm.len();
    if k == h.vertex_count() {
        return true;
    }
    for cand in 0..g.vertex_count() {
        if used[cand] || g.degree(cand) != h.degree(k) {
            continue;
        }
        let ok = (0..k).all(|j| h.has_edge(j, k) == g.has_edge(perm[j], cand));
        if ok {
            used[cand] = true;
            perm.push(cand);
            if extend_iso(h, g, perm, used) {
                return true;
            }
            perm.pop();
            used[cand] = false;
        }
    }
    false
}
