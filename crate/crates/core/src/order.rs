//! Monomial orders for ideal computations.

use std::cmp::Ordering;

use crate::multi_index::MultiIndex;

/// A total, multiplicative well-ordering on monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, the library-wide default.
    Grevlex,
    /// Pure lexicographic with `x0 > x1 > ...`.
    Lex,
    /// Elimination order: grevlex on the leading `elim` variables, ties
    /// broken by grevlex on the rest. Any monomial touching the leading
    /// block beats every monomial that does not.
    Block { elim: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::Lex => {
                for (x, y) in a.exponents().iter().zip(b.exponents()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { elim } => {
                let block_cmp = grevlex_slice(
                    &a.exponents()[..elim.min(a.nvars())],
                    &b.exponents()[..elim.min(b.nvars())],
                );
                match block_cmp {
                    Ordering::Equal => grevlex_slice(
                        &a.exponents()[elim.min(a.nvars())..],
                        &b.exponents()[elim.min(b.nvars())..],
                    ),
                    ord => ord,
                }
            }
        }
    }

    pub fn max<'a>(&self, a: &'a MultiIndex, b: &'a MultiIndex) -> &'a MultiIndex {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn grevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        ord => ord,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn lex_order() {
        let o = MonomialOrder::Lex;
        // x0 beats any power of x1
        assert_eq!(o.cmp(&mi(&[1, 0]), &mi(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&mi(&[2, 0, 0]), &mi(&[1, 3, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        // two leading variables to discard, one kept
        let o = MonomialOrder::Block { elim: 2 };
        // any x0 beats any pure power of the kept variable
        assert_eq!(o.cmp(&mi(&[1, 0, 0]), &mi(&[0, 0, 7])), Ordering::Greater);
        // within the kept block, grevlex
        assert_eq!(o.cmp(&mi(&[0, 0, 2]), &mi(&[0, 0, 1])), Ordering::Greater);
        // elim = 0 degenerates to grevlex on everything
        let g = MonomialOrder::Block { elim: 0 };
        assert_eq!(g.cmp(&mi(&[2, 0, 0]), &mi(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn one_is_minimal() {
        for order in [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::Block { elim: 1 },
        ] {
            let one = mi(&[0, 0, 0]);
            for m in crate::multi_index::multi_indices_of_degree(3, 3) {
                assert_eq!(order.cmp(&one, &m), Ordering::Less);
            }
        }
    }

    #[test]
    fn multiplicative_on_samples() {
        let ms = crate::multi_index::multi_indices_of_degree(3, 2);
        for order in [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::Block { elim: 1 },
        ] {
            for a in &ms {
                for b in &ms {
                    for c in &ms {
                        let ab = order.cmp(a, b);
                        let acbc = order.cmp(&a.mul(c), &b.mul(c));
                        assert_eq!(ab, acbc);
                    }
                }
            }
        }
    }
}
