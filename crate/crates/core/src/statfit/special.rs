//! Digamma, trigamma and log-gamma for positive real arguments.
//!
//! Each function shifts the argument upward with the recurrence until the
//! asymptotic series is accurate, then evaluates the series.

use crate::Scalar;

use super::StatError;

const DIGAMMA_SHIFT: f64 = 6.0;
const LN_GAMMA_SHIFT: f64 = 10.0;

/// ψ(x) for x > 0.
pub fn digamma<T: Scalar>(x: T) -> Result<T, StatError> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(StatError::Domain {
            what: "digamma",
            value: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut x = x;
    let mut acc = T::zero();
    let shift = T::lit(DIGAMMA_SHIFT);
    while x < shift {
        acc = acc - x.recip();
        x = x + T::one();
    }
    let inv = x.recip();
    let inv2 = inv * inv;
    let l = T::lit;
    // Bernoulli terms B_2n / (2n x^2n) up to n = 7
    let tail = inv2
        * (l(1.0 / 12.0)
            - inv2
                * (l(1.0 / 120.0)
                    - inv2
                        * (l(1.0 / 252.0)
                            - inv2
                                * (l(1.0 / 240.0)
                                    - inv2 * (l(1.0 / 132.0) - inv2 * (l(691.0 / 32760.0) - inv2 * l(1.0 / 12.0)))))));
    Ok(acc + x.ln() - l(0.5) * inv - tail)
}

/// ψ'(x) for x > 0.
pub fn trigamma<T: Scalar>(x: T) -> Result<T, StatError> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(StatError::Domain {
            what: "trigamma",
            value: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut x = x;
    let mut acc = T::zero();
    let shift = T::lit(DIGAMMA_SHIFT);
    while x < shift {
        acc = acc + (x * x).recip();
        x = x + T::one();
    }
    let inv = x.recip();
    let inv2 = inv * inv;
    let l = T::lit;
    let series = inv
        + l(0.5) * inv2
        + inv
            * inv2
            * (l(1.0 / 6.0)
                - inv2
                    * (l(1.0 / 30.0)
                        - inv2
                            * (l(1.0 / 42.0)
                                - inv2
                                    * (l(1.0 / 30.0)
                                        - inv2 * (l(5.0 / 66.0) - inv2 * (l(691.0 / 2730.0) - inv2 * l(7.0 / 6.0)))))));
    Ok(acc + series)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma<T: Scalar>(x: T) -> Result<T, StatError> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(StatError::Domain {
            what: "ln_gamma",
            value: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut x = x;
    let mut prod = T::one();
    let shift = T::lit(LN_GAMMA_SHIFT);
    while x < shift {
        prod = prod * x;
        x = x + T::one();
    }
    let inv = x.recip();
    let inv2 = inv * inv;
    let l = T::lit;
    let half_ln_2pi = l(0.918_938_533_204_672_8);
    let series = inv
        * (l(1.0 / 12.0)
            - inv2
                * (l(1.0 / 360.0)
                    - inv2
                        * (l(1.0 / 1260.0)
                            - inv2
                                * (l(1.0 / 1680.0)
                                    - inv2
                                        * (l(1.0 / 1188.0) - inv2 * (l(691.0 / 360360.0) - inv2 * l(1.0 / 156.0)))))));
    Ok((x - l(0.5)) * x.ln() - x + half_ln_2pi + series - prod.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    // reference values from 40-digit arithmetic
    const DIGAMMA_REF: &[(f64, f64)] = &[
        (1e-3, -1000.575571931810279654757),
        (0.2, -5.289039896592188003920738),
        (0.5, -1.963510026021423479440976),
        (1.0, -0.5772156649015328606065121),
        (2.0, 0.4227843350984671393934879),
        (3.7, 1.167153539361511440947651),
        (5.0, 1.506117668431800472726821),
        (6.0, 1.706117668431800472726821),
        (10.0, 2.251752589066721107647456),
        (20.0, 2.970523992242149050877257),
        (123.4, 4.811373775116277419139781),
        (1e3, 6.907255195648812052050006),
        (1e6, 13.81551005796419077077462),
    ];

    #[test]
    fn digamma_reference_values() {
        for &(x, want) in DIGAMMA_REF {
            let got = digamma(x).unwrap();
            assert!((got - want).abs() <= 1e-10, "psi({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn digamma_euler_mascheroni() {
        assert_abs_diff_eq!(digamma(1.0).unwrap(), -0.5772156649, epsilon = 1e-9);
        assert_abs_diff_eq!(digamma(2.0).unwrap(), 1.0 - 0.5772156649015329, epsilon = 1e-12);
    }

    #[test]
    fn digamma_domain() {
        assert!(digamma(0.0).is_err());
        assert!(digamma(-1.5).is_err());
        assert!(digamma(f64::NAN).is_err());
    }

    #[test]
    fn trigamma_reference_values() {
        for &(x, want) in &[
            (0.5, 4.934802200544679309417245),
            (1.0, 1.644934066848226436472415),
            (2.5, 0.4903577561002348649728011),
            (10.0, 0.105166335681685746122201),
            (1e3, 0.001000500166666633333357143),
        ] {
            let got: f64 = trigamma(x).unwrap();
            assert!((got - want).abs() <= 1e-12 * want.max(1.0), "trigamma({x}) = {got}");
        }
    }

    #[test]
    fn ln_gamma_reference_values() {
        for &(x, want) in &[
            (1e-3, 6.907178885383853661683681),
            (0.5, 0.5723649429247000870717137),
            (1.0, 0.0),
            (1.5, -0.1207822376352452223455184),
            (2.5, 0.2846828704729191596324947),
            (3.0, std::f64::consts::LN_2),
            (7.25, 7.052185450738539444925749),
            (10.0, 12.80182748008146961120772),
            (100.0, 359.134205369575398776044),
            (1e4, 82099.71749644237727264896),
        ] {
            let got: f64 = ln_gamma(x).unwrap();
            assert!(
                (got - want).abs() <= 1e-13 * want.abs().max(1.0),
                "lnGamma({x}) = {got}"
            );
        }
    }

    #[test]
    fn f32_instantiation() {
        let got: f32 = digamma(1.0f32).unwrap();
        assert!((got + 0.577_215_7).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn digamma_recurrence(x in 1e-3f64..1e6) {
            let lhs = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
            prop_assert!((lhs - x.recip()).abs() <= 1e-10);
        }

        #[test]
        fn ln_gamma_recurrence(x in 1e-2f64..1e3) {
            let lhs = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap();
            prop_assert!((lhs - x.ln()).abs() <= 1e-11 * x.ln().abs().max(1.0));
        }
    }
}
