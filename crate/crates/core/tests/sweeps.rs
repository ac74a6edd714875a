use constacyclic3d::sweep::{admitted_sign_rings, duality_sweep, factorized_sweep, grid_count};
use constacyclic3d::PrimeField;

#[test]
fn length_16_rings_agree() {
    let rings = admitted_sign_rings(PrimeField::new(5).unwrap(), 4, 2, 2);
    assert_eq!(rings.len(), 8);
    for r in &rings {
        let fact = factorized_sweep(r).unwrap();
        assert!(fact.structure_verified(), "{r:?}");
        // x^4 - 1 has 16 monic divisors over F_5, x^4 + 1 = (x^2 + 2)(x^2 + 3) has 4
        let divisors: u128 = if r.alpha == 1 { 16 } else { 4 };
        assert_eq!(fact.grids, divisors.pow(4));
        assert_eq!(fact.grids, grid_count(r).unwrap());
        assert_eq!(fact.disagreements, 0, "{r:?}");
    }
    // one ring enumerated code by code as a cross-check of the factorized count
    let direct = duality_sweep(&rings[3]).unwrap();
    let fact = factorized_sweep(&rings[3]).unwrap();
    assert!(direct.clean(), "{direct:?}");
    assert_eq!(direct.specs as u128, fact.grids);
    assert_eq!(direct.self_dual as u128, fact.self_dual);
    assert_eq!(
        direct.divisibility_without_dimension as u128,
        fact.divisibility_without_dimension
    );
}
