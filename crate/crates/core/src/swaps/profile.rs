use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::packing::NearPacking;

/// The neighborhood structure seen from a label `u`.
///
/// - `a      = N2(N1(u)) \ (N1(u) ∪ N2(u) ∪ N1(N2(u)))`
/// - `b      = N1(N2(u)) \ (N1(u) ∪ N2(u) ∪ N2(N1(u)))`
/// - `a_star = N2(N1(u)) \ (N2(u) ∪ N1(N2(u)))`
/// - `n1_star = N1(u) ∩ (N1(N2(u)) \ (N2(u) ∪ N2(N1(u))))`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodProfile {
    pub u: usize,
    /// `N1(u)`, blue neighbors.
    pub n1: VertexSet,
    /// `N2(u)`, red neighbors.
    pub n2: VertexSet,
    /// `N1(N2(u))`: ends of red–blue links from `u`.
    pub n1n2: VertexSet,
    /// `N2(N1(u))`: ends of blue–red links from `u`.
    pub n2n1: VertexSet,
    pub a: VertexSet,
    pub b: VertexSet,
    pub a_star: VertexSet,
    pub n1_star: VertexSet,
}

pub fn profile(np: &NearPacking<'_>, u: usize) -> Result<NeighborhoodProfile> {
    let n = np.n();
    if u >= n {
        return Err(Error::LabelOutOfRange(u, n));
    }
    let (blue, red) = (np.blue(), np.red());
    let n1 = blue.neighborhood(u);
    let n2 = red.neighborhood(u);
    let mut n1n2 = VertexSet::empty(n);
    for x in n2.iter() {
        n1n2.union_with(blue.row(x));
    }
    let mut n2n1 = VertexSet::empty(n);
    for x in n1.iter() {
        n2n1.union_with(red.row(x));
    }
    let n1_n2 = n1.union(&n2);
    let a = n2n1.difference(&n1_n2.union(&n1n2));
    let b = n1n2.difference(&n1_n2.union(&n2n1));
    let a_star = n2n1.difference(&n2.union(&n1n2));
    let n1_star = n1.intersection(&n1n2.difference(&n2.union(&n2n1)));

    let p = NeighborhoodProfile {
        u,
        n1,
        n2,
        n1n2,
        n2n1,
        a,
        b,
        a_star,
        n1_star,
    };
    debug_assert!(p.partition_sane());
    Ok(p)
}

impl NeighborhoodProfile {
    /// The containments and disjointness facts implied by the definitions.
    pub fn partition_sane(&self) -> bool {
        self.a.is_subset(&self.a_star)
            && self.n1_star.is_subset(&self.n1)
            && self.a_star.is_disjoint(&self.n1n2)
            && self.a_star.is_disjoint(&self.n2)
            && self.b.is_disjoint(&self.n2n1)
    }
}
