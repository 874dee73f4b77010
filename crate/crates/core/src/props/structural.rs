//! The same properties decided from coarse structures alone, with no
//! metric involved.

use crate::coarse::CoarseStructure;
use crate::relset::{Relation, Subset};

use super::SpaceMap;

/// Every singleton `{(x, y)}` is controlled.
pub fn connected(s: &CoarseStructure) -> bool {
    let n = s.carrier();
    (0..n).all(|x| {
        (0..n).all(|y| s.contains(&Relation::from_pairs(n, [(x, y)]).expect("in range")))
    })
}

/// `b ⊆ E[x]` for some controlled `E` and some `x`.
pub fn bounded(s: &CoarseStructure, b: &Subset) -> bool {
    (0..s.carrier()).any(|x| b.is_subset(&s.top().row(x)))
}

/// `(f × f)(E)` is controlled for every controlled `E`.
pub fn bornologous(f: &SpaceMap, sx: &CoarseStructure, sy: &CoarseStructure) -> bool {
    sy.contains(&f.image(sx.top()))
}

/// `(f × f)⁻¹(F)` is controlled for every controlled `F`.
pub fn effectively_proper(f: &SpaceMap, sx: &CoarseStructure, sy: &CoarseStructure) -> bool {
    sx.contains(&f.preimage(sy.top()))
}

/// `f⁻¹(B)` is bounded for every bounded `B ⊆ Y`; checks every subset.
pub fn proper(f: &SpaceMap, sx: &CoarseStructure, sy: &CoarseStructure) -> bool {
    Subset::all(sy.carrier())
        .filter(|b| bounded(sy, b))
        .all(|b| bounded(sx, &f.preimage_set(&b)))
}

/// `{(f(x), g(x)) : x ∈ X}` is controlled.
pub fn close(f: &SpaceMap, g: &SpaceMap, sy: &CoarseStructure) -> bool {
    let pairs = (0..f.source()).map(|x| (f.apply(x), g.apply(x)));
    sy.contains(&Relation::from_pairs(sy.carrier(), pairs).expect("in range"))
}
