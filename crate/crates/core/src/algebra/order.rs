use std::cmp::Ordering;

use super::monomial::{revlex, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// Degree first, reverse lexicographic tie break. A well-order.
    GlobalDegRevLex,
    /// Lower degree is larger (`1 > x` for every variable), reverse
    /// lexicographic tie break. Used for standard bases in the local ring.
    LocalNegDegRevLex,
    /// Degrevlex on the first `n` variables (by precedence), then degrevlex on
    /// the rest. Every monomial involving the first block beats every
    /// monomial that does not.
    EliminationBlock(usize),
}

/// A monomial order together with a variable precedence.
///
/// `precedence[k]` is the ring index of the variable ranked `k`-th (rank 0 is
/// the most significant). The identity precedence follows ring order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder { kind, precedence: None }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Self {
        let identity = precedence.iter().enumerate().all(|(i, &v)| i == v);
        MonomialOrder { kind, precedence: (!identity).then_some(precedence) }
    }

    pub fn global() -> Self {
        MonomialOrder::new(OrderKind::GlobalDegRevLex)
    }

    pub fn local() -> Self {
        MonomialOrder::new(OrderKind::LocalNegDegRevLex)
    }

    pub fn elimination(first_block: usize) -> Self {
        MonomialOrder::new(OrderKind::EliminationBlock(first_block))
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_local(&self) -> bool {
        self.kind == OrderKind::LocalNegDegRevLex
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.precedence {
            None => compare_ranked(self.kind, a.exponents(), b.exponents()),
            Some(p) => {
                let pa: Vec<u32> = p.iter().map(|&v| a.exponent(v)).collect();
                let pb: Vec<u32> = p.iter().map(|&v| b.exponent(v)).collect();
                compare_ranked(self.kind, &pa, &pb)
            }
        }
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| revlex(a, b))
}

fn compare_ranked(kind: OrderKind, a: &[u32], b: &[u32]) -> Ordering {
    match kind {
        OrderKind::GlobalDegRevLex => degrevlex(a, b),
        OrderKind::LocalNegDegRevLex => degree(b).cmp(&degree(a)).then_with(|| revlex(a, b)),
        OrderKind::EliminationBlock(k) => {
            let k = k.min(a.len());
            degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
        }
    }
}

/// Free-function form of [`MonomialOrder::compare`].
pub fn compare(a: &Monomial, b: &Monomial, order: &MonomialOrder) -> Ordering {
    order.compare(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn local_order_puts_one_on_top() {
        let o = MonomialOrder::local();
        assert_eq!(o.compare(&m(&[0, 0]), &m(&[1, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn global_examples() {
        let o = MonomialOrder::global();
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        // s*t vs s^2: the smaller t-exponent wins.
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[2, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[0, 0]), &m(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn precedence_swaps_variables() {
        let o = MonomialOrder::with_precedence(OrderKind::GlobalDegRevLex, vec![1, 0]);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::elimination(2);
        // s beats any power of X.
        assert_eq!(o.compare(&m(&[1, 0, 0, 0, 0]), &m(&[0, 0, 9, 9, 9])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0, 0, 0, 0]), &m(&[1, 0, 0, 0, 1])), Ordering::Less);
    }
}
