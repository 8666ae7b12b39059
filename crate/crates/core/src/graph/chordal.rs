use super::Graph;
use crate::set::VertexSet;

/// Outcome of chordality testing. A perfect elimination ordering is
/// supplied exactly when the graph is chordal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordalVerdict {
    pub chordal: bool,
    pub elimination_order: Option<Vec<usize>>,
}

/// Lexicographic breadth-first search visit order. Ties between equal
/// labels go to the lowest id.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let mut best: Option<usize> = None;
        for v in (0..n).filter(|&v| !visited[v]) {
            match best {
                None => best = Some(v),
                Some(b) if labels[v] > labels[b] => best = Some(v),
                _ => {}
            }
        }
        let v = best.expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for w in g.adj(v).iter() {
            if !visited[w] {
                labels[w].push(n - step);
            }
        }
    }
    order
}

/// Checks that each vertex's neighbours later in `order` form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let n = g.order();
    if order.len() != n {
        return false;
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return false;
        }
        position[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = g
            .adj(v)
            .iter()
            .filter(|&w| position[w] > position[v])
            .collect();
        let Some(&parent) = later.iter().min_by_key(|&&w| position[w]) else {
            continue;
        };
        let mut rest = VertexSet::from_ids(n, later.iter().copied());
        rest.remove(parent);
        if !rest.is_subset(g.adj(parent)) {
            return false;
        }
    }
    true
}

impl Graph {
    /// Chordality via LexBFS: the reverse visit order is a perfect
    /// elimination ordering iff the graph is chordal.
    pub fn is_chordal(&self) -> ChordalVerdict {
        let mut order = lex_bfs(self);
        order.reverse();
        if is_perfect_elimination_ordering(self, &order) {
            ChordalVerdict {
                chordal: true,
                elimination_order: Some(order),
            }
        } else {
            ChordalVerdict {
                chordal: false,
                elimination_order: None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{bowtie, complete, cycle};

    #[test]
    fn small_cases() {
        assert!(!cycle(4).is_chordal().chordal);
        assert!(cycle(4).is_chordal().elimination_order.is_none());
        let k4 = complete(4).is_chordal();
        assert!(k4.chordal);
        assert!(is_perfect_elimination_ordering(
            &complete(4),
            k4.elimination_order.as_ref().unwrap()
        ));
        assert!(bowtie().is_chordal().chordal);
    }

    #[test]
    fn lex_bfs_starts_at_zero() {
        assert_eq!(lex_bfs(&cycle(5))[0], 0);
    }
}
