use crate::coloring::{opp_same, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Result of [`greedy_unfriendly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub coloring: PartialColoring,
    pub flips: usize,
}

/// Flips the lowest-id unfrozen vertex with more same- than opposite-colored
/// neighbors until none is left. Every flip raises the cut by at least two,
/// so at most `|E| / 2` flips happen. Only colored vertices take part.
pub fn greedy_unfriendly(g: &Graph, c0: &PartialColoring) -> Result<GreedyOutcome> {
    if c0.n() != g.n() {
        return Err(Error::input("coloring and graph sizes differ"));
    }
    let mut c = c0.clone();
    let mut flips = 0;
    'outer: loop {
        for v in 0..g.n() {
            if !c.is_colored(v) || c.is_frozen(v) {
                continue;
            }
            let (opp, same) = opp_same(g, &c, v);
            if opp < same {
                c.flip_unchecked(v);
                flips += 1;
                continue 'outer;
            }
        }
        break;
    }
    Ok(GreedyOutcome { coloring: c, flips })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{cut_size, is_unfriendly_at};

    #[test]
    fn c4_from_all_zero() {
        let c4 = Graph::cycle(4);
        let out = greedy_unfriendly(&c4, &PartialColoring::from_bits(&[0, 0, 0, 0])).unwrap();
        // vertex 0 flips first (two same neighbors), then 2
        assert_eq!(out.coloring, PartialColoring::from_bits(&[1, 0, 1, 0]));
        assert_eq!(out.flips, 2);
        for v in 0..4 {
            assert!(is_unfriendly_at(&c4, &out.coloring, v).unwrap());
        }
    }

    #[test]
    fn fixed_point_unchanged() {
        let c4 = Graph::cycle(4);
        let c = PartialColoring::from_bits(&[0, 1, 0, 1]);
        let out = greedy_unfriendly(&c4, &c).unwrap();
        assert_eq!(out.coloring, c);
        assert_eq!(out.flips, 0);
    }

    #[test]
    fn c5_from_all_zero() {
        let c5 = Graph::cycle(5);
        let out = greedy_unfriendly(&c5, &PartialColoring::from_bits(&[0; 5])).unwrap();
        assert_eq!(cut_size(&c5, &out.coloring), 4);
        for v in 0..5 {
            assert!(is_unfriendly_at(&c5, &out.coloring, v).unwrap());
        }
    }

    #[test]
    fn frozen_vertices_stay() {
        let star = Graph::star(3);
        let mut c = PartialColoring::from_bits(&[0, 0, 0, 0]);
        c.freeze(1).unwrap();
        c.freeze(2).unwrap();
        c.freeze(3).unwrap();
        let out = greedy_unfriendly(&star, &c).unwrap();
        assert_eq!(out.coloring.bits(), vec![Some(1), Some(0), Some(0), Some(0)]);
    }
}
