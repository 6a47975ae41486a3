use borel_core::series::{borel_transform, cauchy_product, convolution_product, formal_laplace_delta, TransMonomial};
use borel_core::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn rationals() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-50i64..=50, 1i64..=20), 1..=8)
        .prop_map(|v| v.into_iter().map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect())
}

fn trans(tau: u8, c: Vec<BigRational>) -> TransMonomial<BigRational> {
    TransMonomial::new(Complex64::new(0.0, 0.0), tau as f64, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laplace_inverts_borel(tau in 0u8..=3, c in rationals()) {
        let t = trans(tau, c);
        prop_assert_eq!(formal_laplace_delta(&borel_transform(&t).unwrap(), t.alpha).unwrap(), t);
    }

    #[test]
    fn borel_takes_products_to_convolutions(ta in 0u8..=3, a in rationals(), tb in 0u8..=3, b in rationals()) {
        let (a, b) = (trans(ta, a), trans(tb, b));
        let left = borel_transform(&a.mul(&b)).unwrap();
        let right = convolution_product(&borel_transform(&a).unwrap(), &borel_transform(&b).unwrap()).unwrap();
        prop_assert_eq!(&left.delta_coeff, &right.delta_coeff);
        let (l, r) = (left.series.coeffs(), right.series.coeffs());
        let n = l.len().min(r.len());
        if n > 0 {
            prop_assert_eq!(left.series.shift, right.series.shift);
        }
        prop_assert_eq!(&l[..n], &r[..n]);
        prop_assert!(l[n..].iter().chain(&r[n..]).all(Zero::is_zero));
    }

    #[test]
    fn cauchy_product_commutes(a in rationals(), b in rationals()) {
        let (a, b) = (trans(0, a), trans(0, b));
        prop_assert_eq!(cauchy_product(&a.series, &b.series).unwrap(), cauchy_product(&b.series, &a.series).unwrap());
    }
}
