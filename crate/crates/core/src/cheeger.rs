//! Exact Cheeger constant by subset enumeration.

use num_bigint::BigInt;

use crate::{Error, Graph, Rational, Result};

pub const MAX_CHEEGER_VERTICES: usize = 20;

/// `min |E(X, V \ X)| / vol(X)` over vertex sets with `0 < vol(X) <= vol(V) / 2`.
///
/// Sets made only of isolated vertices have zero volume and are skipped, so
/// isolated vertices never force the constant to zero on their own.
pub fn cheeger_constant(g: &Graph) -> Result<Rational> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = g.n();
    if n > MAX_CHEEGER_VERTICES {
        return Err(Error::SizeCapExceeded {
            what: "vertex count",
            actual: n,
            limit: MAX_CHEEGER_VERTICES,
        });
    }
    let rows = g.adjacency_masks();
    let deg: alloc::vec::Vec<u64> = rows.iter().map(|r| u64::from(r.count_ones())).collect();
    let total: u64 = deg.iter().sum();
    let full = (1u64 << n) - 1;
    // best ratio as (cut, vol)
    let mut best: Option<(u64, u64)> = None;
    for x in 1..full {
        let mut vol = 0;
        let mut cut = 0;
        let mut bits = x;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            vol += deg[v];
            cut += u64::from((rows[v] & !x).count_ones());
        }
        if vol == 0 || 2 * vol > total {
            continue;
        }
        match best {
            Some((bc, bv)) if cut * bv >= bc * vol => {}
            _ => best = Some((cut, vol)),
        }
    }
    // some single vertex of positive degree always qualifies
    let (cut, vol) = best.expect("a non-empty graph has a qualifying set");
    Ok(Rational::new(BigInt::from(cut), BigInt::from(vol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn complete(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(cheeger_constant(&complete(4)).unwrap(), r(2, 3));
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(cheeger_constant(&c4).unwrap(), r(1, 2));
        let two = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(cheeger_constant(&two).unwrap(), r(0, 1));
        assert_eq!(cheeger_constant(&Graph::empty(3)), Err(Error::EmptyGraph));
        assert!(matches!(
            cheeger_constant(&Graph::from_edge_list(21, &[(0, 1)]).unwrap()),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn complete_graph_formula() {
        // best cut of K_n: half the vertices, ceil(n/2) floor(n/2) edges over volume floor(n/2)(n-1)
        for n in 2..=8i64 {
            let (lo, hi) = (n / 2, n - n / 2);
            assert_eq!(
                cheeger_constant(&complete(n as usize)).unwrap(),
                r(hi * lo, lo * (n - 1))
            );
        }
    }
}
