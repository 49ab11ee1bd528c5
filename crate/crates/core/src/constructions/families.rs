//! Named graph families.

use crate::graph::{Graph, GraphBuilder};
use crate::labeling::{Labeling, ListAssignment};

/// The graph G_k with its additive labeling into {1..k} and the adversarial
/// lists of size 2k-1 that admit no additive labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub graph: Graph,
    pub labeling: Labeling,
    pub lists: ListAssignment,
}

/// 2k-1 disjoint copies K^(α) of K_{2k} on {x_β^α, y_β^α : β = 1..k}, plus a
/// hub t adjacent to every y_β^α.
pub fn counterexample_graph(k: usize) -> Counterexample {
    assert!(k >= 1, "k must be positive");
    let k64 = k as u64;
    let mut b = GraphBuilder::new();
    let mut labeling = Labeling::new();
    let mut lists = ListAssignment::new();
    let mut ys = Vec::new();
    for alpha in 1..2 * k64 {
        let mut clique = Vec::new();
        for beta in 1..=k64 {
            let x = b.add_vertex(format!("x_{beta}^{alpha}"));
            let y = b.add_vertex(format!("y_{beta}^{alpha}"));
            labeling.set(x, beta);
            labeling.set(y, beta);
            lists.insert(x, 1..2 * k64);
            lists.insert(y, 1 + alpha..2 * k64 + alpha);
            clique.extend([x, y]);
            ys.push(y);
        }
        for (i, &p) in clique.iter().enumerate() {
            for &q in &clique[i + 1..] {
                b.add_edge(p, q);
            }
        }
    }
    let t = b.add_vertex("t");
    labeling.set(t, k64);
    lists.insert(t, 1..2 * k64);
    for y in ys {
        b.add_edge(y, t);
    }
    Counterexample { graph: b.build().expect("valid construction"), labeling, lists }
}

/// K_n on v_1..v_n where v_i carries i-1 pendants u_{i,j}; ω = n and η = 1.
pub fn clique_eta_one(n: usize) -> Graph {
    assert!(n >= 1, "n must be positive");
    let mut b = GraphBuilder::new();
    let v: Vec<_> = (1..=n).map(|i| b.add_vertex(format!("v_{i}"))).collect();
    for i in 0..n {
        for j in i + 1..n {
            b.add_edge(v[i], v[j]);
        }
    }
    for i in 1..=n {
        for j in 1..i {
            let u = b.add_vertex(format!("u_{{{i},{j}}}"));
            b.add_edge(v[i - 1], u);
        }
    }
    b.build().expect("valid construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{is_additive, neighbor_sum};

    #[test]
    fn k1_is_p3() {
        let c = counterexample_graph(1);
        assert_eq!(c.graph.n(), 3);
        assert_eq!(c.graph.degree_sequence(), vec![1, 2, 1]);
        assert_eq!(c.labeling.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 1, 1]);
        let lists: Vec<Vec<u64>> = c.lists.iter().map(|(_, l)| l.iter().copied().collect()).collect();
        assert_eq!(lists, vec![vec![1], vec![2], vec![1]]);
        let y = c.graph.vertex_named("y_1^1").unwrap();
        assert_eq!(neighbor_sum(&c.graph, &c.labeling, y).unwrap(), 2);
    }

    #[test]
    fn k2_shape() {
        let c = counterexample_graph(2);
        assert_eq!(c.graph.n(), 13);
        assert_eq!(c.graph.edge_count(), 3 * 6 + 6);
        assert!(is_additive(&c.graph, &c.labeling));
        assert_eq!(c.labeling.max_label(), Some(2));
        assert!(c.lists.iter().all(|(_, l)| l.len() == 3));
    }

    #[test]
    fn clique_family() {
        let g = clique_eta_one(3);
        assert_eq!(g.n(), 6);
        assert_eq!(&g.degree_sequence()[..3], &[2, 3, 4]);
        assert_eq!(clique_eta_one(1).n(), 1);
        assert!(is_additive(&g, &Labeling::constant(6, 1)));
    }
}
