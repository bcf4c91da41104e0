//! Full-range accuracy check of the production Bessel path against the
//! independent integral-representation oracle.

use qfriction::specfun::bessel_k_all;
use qfriction::validate::bessel_k_oracle;

#[test]
fn production_matches_oracle_over_working_range() {
    // Log grid over [1e-6, 700]; the oracle itself is validated against an
    // mpmath grid in the validate module's unit tests.
    let mut worst = (0.0_f64, 0.0_f64);
    for i in 0..=880 {
        let x = 1e-6 * 10f64.powf(8.845 * i as f64 / 880.0);
        if x > 700.0 {
            break;
        }
        let t = bessel_k_all(x).unwrap();
        for (order, got) in [(0u8, t.k0), (1, t.k1)] {
            let want = bessel_k_oracle(order, x);
            let err = (got - want).abs() / want;
            if err > worst.0 {
                worst = (err, x);
            }
        }
    }
    assert!(
        worst.0 <= 1e-10,
        "worst rel error {:.3e} at x = {}",
        worst.0,
        worst.1
    );
}
