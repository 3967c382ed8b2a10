use super::graph::SmallGraph;

/// Part A of the Clebsch bipartition drawn in the reference figure (8 edges inside).
pub const CLEBSCH_FIGURE_PART: [usize; 8] = [0, 2, 4, 5, 6, 9, 11, 15];

const CLEBSCH_EDGES: [(usize, usize); 40] = [
    (0, 1), (0, 6), (0, 8), (0, 10), (0, 13), (1, 3), (1, 4), (1, 9), (1, 15), (2, 3),
    (2, 8), (2, 10), (2, 12), (2, 15), (3, 5), (3, 6), (3, 11), (4, 5), (4, 10), (4, 12),
    (4, 14), (5, 7), (5, 8), (5, 13), (6, 7), (6, 12), (6, 14), (7, 9), (7, 10), (7, 15),
    (8, 9), (8, 14), (9, 11), (9, 12), (10, 11), (11, 13), (11, 14), (12, 13), (13, 15),
    (14, 15),
];

/// The 16-vertex, 5-regular triangle-free Clebsch graph in the labeling of the
/// published figure.
pub fn clebsch() -> SmallGraph {
    SmallGraph::from_edges(16, &CLEBSCH_EDGES).expect("static edge list")
}

pub fn cycle(n: usize) -> SmallGraph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SmallGraph::from_edges(n, &edges).expect("cycle fits")
}

pub fn path(n: usize) -> SmallGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    SmallGraph::from_edges(n, &edges).expect("path fits")
}

/// `K_{1,t}` with the center at vertex 0.
pub fn star(t: usize) -> SmallGraph {
    let edges: Vec<_> = (1..=t).map(|i| (0, i)).collect();
    SmallGraph::from_edges(t + 1, &edges).expect("star fits")
}

pub fn petersen() -> SmallGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SmallGraph::from_edges(10, &edges).expect("static edge list")
}

/// Built-in graphs addressable by name: `c5`, `petersen`, `clebsch`, plus
/// `cN` / `pN` for cycles and paths.
pub fn named_graph(name: &str) -> Option<SmallGraph> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "petersen" => return Some(petersen()),
        "clebsch" => return Some(clebsch()),
        _ => {}
    }
    let (kind, digits) = lower.split_at(1);
    let k: usize = digits.parse().ok()?;
    match kind {
        "c" if (3..=32).contains(&k) => Some(cycle(k)),
        "p" if (1..=32).contains(&k) => Some(path(k)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clebsch_shape() {
        let g = clebsch();
        assert_eq!(g.n(), 16);
        assert_eq!(g.edge_count(), 40);
        assert!((0..16).all(|v| g.degree(v) == 5));
        assert!(g.is_triangle_free());
    }

    #[test]
    fn clebsch_triangle_free_by_triple_scan() {
        let g = clebsch();
        for a in 0..16 {
            for b in a + 1..16 {
                for c in b + 1..16 {
                    assert!(!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)));
                }
            }
        }
    }

    #[test]
    fn small_named() {
        assert!(cycle(5).is_triangle_free());
        let k3 = cycle(3);
        assert!(!k3.is_triangle_free());
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert!(p.is_triangle_free());
        assert_eq!(named_graph("C5"), Some(cycle(5)));
        assert_eq!(named_graph("p4"), Some(path(4)));
        assert_eq!(named_graph("clebsch"), Some(clebsch()));
        assert_eq!(named_graph("nope"), None);
        assert_eq!(star(3).degree(0), 3);
    }
}
