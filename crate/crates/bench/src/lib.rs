//! Shared setup for the criterion benches.

use downset_codes::{DefiningSet, DownSet, FpVector, Prime, Variant, DEFAULT_BUDGET};

/// The four-weight ternary code: p = 3, m = 3, Delta = <(1,1,0)>.
pub fn ternary_example() -> (DownSet, DefiningSet) {
    let p = Prime::new(3).unwrap();
    let g = FpVector::new(p, vec![1, 1, 0]).unwrap();
    let ds = DownSet::new(p, 3, vec![g]).unwrap();
    let l = DefiningSet::from_down_set(&ds, Variant::Complement, DEFAULT_BUDGET).unwrap();
    (ds, l)
}

/// The five-weight pentary code: p = 5, m = 3, Delta = <(2,2,0)>.
pub fn pentary_example() -> (DownSet, DefiningSet) {
    let p = Prime::new(5).unwrap();
    let g = FpVector::new(p, vec![2, 2, 0]).unwrap();
    let ds = DownSet::new(p, 3, vec![g]).unwrap();
    let l = DefiningSet::from_down_set(&ds, Variant::Complement, DEFAULT_BUDGET).unwrap();
    (ds, l)
}
