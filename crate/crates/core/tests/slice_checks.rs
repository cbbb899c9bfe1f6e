use proptest::prelude::*;
use ribbon_core::family::builtin;
use ribbon_core::laurent::Laurent1;
use ribbon_core::skein::SkeinConfig;
use ribbon_core::slicetools::{det_square_check, fox_milnor_search, is_odd_square, DEFAULT_MAX_COEFF};

#[test]
fn odd_squares() {
    let squares: Vec<u64> = (0..40).filter(|&n| is_odd_square(n)).collect();
    assert_eq!(squares, vec![1, 9, 25]);
}

#[test]
fn determinant_checks_on_builtins() {
    let cfg = SkeinConfig::default();
    assert_eq!(det_square_check(&builtin("fig8_sum").unwrap(), &cfg).unwrap(), (true, 25));
    assert_eq!(det_square_check(&builtin("figure_eight").unwrap(), &cfg).unwrap(), (false, 5));
    assert_eq!(det_square_check(&builtin("trefoil_rh").unwrap(), &cfg).unwrap(), (false, 3));
    assert_eq!(det_square_check(&builtin("unknot").unwrap(), &cfg).unwrap(), (true, 1));
}

#[test]
fn no_factor_for_the_trefoil() {
    let delta = Laurent1::from_whole(&[(-1, 1), (0, -1), (1, 1)]);
    assert_eq!(fox_milnor_search(&delta, DEFAULT_MAX_COEFF).unwrap(), None);
}

proptest! {
    #[test]
    fn products_with_conjugates_factor(a in -4i64..=4, b in -4i64..=4) {
        // f(1) = 1 for f = 1 + a t + b t^2 - (a + b) t^3
        let f = Laurent1::from_coeffs(&[1, a, b, -(a + b)]);
        let delta = &f * &f.invert();
        let g = fox_milnor_search(&delta, DEFAULT_MAX_COEFF).unwrap().expect("factor exists");
        let gg = &g * &g.invert();
        prop_assert_eq!(gg, delta);
    }
}
