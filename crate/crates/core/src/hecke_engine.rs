//! Construction of the characteristic Hecke polynomial attached to a based
//! root datum with involution `σ` and a minuscule cocharacter `μ`.
//!
//! The polynomial is assembled from the Weyl orbit of `μ^{-1} = −μ`: the
//! orbit splits into `⟨σ^n⟩`-orbits (`n` the reflex degree of `μ`), and each
//! such orbit of size `m` contributes a monic factor
//!
//! ```text
//!     x^m − p^{nm⟨ρ, μ−ν⟩} · h_{ν̃},      ν̃ = Σ_{j=1..nm} σ^j(ν),
//! ```
//!
//! where `ν` is any member of the orbit (the exponent and `ν̃` do not depend
//! on the choice; we fix the lexicographically greatest one). The product of
//! all factors is the full polynomial, and every coefficient is invariant
//! under the dot action of the σ-fixed Weyl group.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::root_datum::{BasedRootDatum, Character, Cocharacter, LeviDatum};
use crate::torus_algebra::{
    dot_invariance_failure_levi, DotInvarianceFailure, HeckePolynomial, LaurentPolynomial,
    TorusAlgebraElement,
};

/// One `⟨σ^n⟩`-orbit of the Weyl orbit of `−μ` together with the monic
/// polynomial factor it contributes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitFactor {
    /// Lexicographically greatest member of the orbit.
    pub rep: Cocharacter,
    /// Orbit cardinality `m`.
    pub size: usize,
    /// The power of `p` in the constant term: `nm⟨ρ, μ−rep⟩`.
    pub exponent: i64,
    /// Norm cocharacter `ν̃ = Σ_{j=1..nm} σ^j(rep)`; always σ-invariant.
    pub norm: Cocharacter,
    /// `x^m − p^{exponent}·h_{norm}`.
    pub factor: HeckePolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeckeError {
    /// `μ` pairs with some root outside `{−1, 0, 1}`, so the orbit carries
    /// weight multiplicities this construction cannot see.
    NonMinuscule { root: Character, pairing: i64 },
    /// The distinguished norm factor does not divide the full polynomial.
    NormFactorRemainder { factor: HeckePolynomial },
    /// The norm factor's coefficients move under the dot action of the
    /// σ-fixed Weyl group of the Levi centralizing the norm cocharacter.
    NormFactorInvariance { failure: DotInvarianceFailure },
}

impl fmt::Display for HeckeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeError::NonMinuscule { root, pairing } => write!(
                f,
                "cocharacter is not minuscule: pairing with root {root:?} is {pairing}"
            ),
            HeckeError::NormFactorRemainder { factor } => {
                write!(f, "norm factor {factor} does not divide the Hecke polynomial")
            }
            HeckeError::NormFactorInvariance { failure } => {
                write!(f, "norm factor coefficients are not Levi-dot-invariant: {failure}")
            }
        }
    }
}

impl core::error::Error for HeckeError {}

fn require_minuscule(datum: &BasedRootDatum, mu: &[i64]) -> Result<(), HeckeError> {
    for root in datum.positive_roots() {
        let pairing = datum.pair(root, mu);
        if pairing.abs() > 1 {
            return Err(HeckeError::NonMinuscule { root: root.clone(), pairing });
        }
    }
    Ok(())
}

/// Orbit of `start` under repeated application of `σ^n`, in traversal order.
fn sigma_power_orbit(datum: &BasedRootDatum, n: usize, start: &[i64]) -> Vec<Cocharacter> {
    let mut orbit = vec![start.to_vec()];
    loop {
        let next = datum.sigma_pow_apply(n, orbit.last().unwrap());
        if next == orbit[0] {
            return orbit;
        }
        orbit.push(next);
    }
}

fn factor_for_orbit(
    datum: &BasedRootDatum,
    mu_dom: &[i64],
    n: usize,
    rep: &[i64],
    size: usize,
) -> OrbitFactor {
    let diff: Vec<i64> = mu_dom.iter().zip(rep).map(|(&a, &b)| a - b).collect();
    let twice = datum.pair_two_rho(&diff) * (n as i64) * (size as i64);
    assert!(twice % 2 == 0, "nm⟨2ρ, μ−ν⟩ must be even");
    let exponent = twice / 2;
    assert!(exponent >= 0, "orbit exponent must be nonnegative");

    let mut norm = vec![0i64; datum.rank()];
    let mut v = rep.to_vec();
    for _ in 0..n * size {
        v = datum.sigma_apply(&v);
        for (acc, &c) in norm.iter_mut().zip(&v) {
            *acc += c;
        }
    }
    assert!(datum.is_sigma_invariant(&norm), "norm cocharacter must be σ-invariant");

    let constant =
        TorusAlgebraElement::h(datum, &norm).scale(&LaurentPolynomial::p_power(exponent));
    let factor = HeckePolynomial::power_minus(datum.rank(), size, &constant);
    OrbitFactor { rep: rep.to_vec(), size, exponent, norm, factor }
}

/// Split the Weyl orbit of `−μ` into `⟨σ^n⟩`-orbits and build one monic
/// factor per orbit. Factors are listed with representatives in descending
/// lexicographic order, so the zero-exponent factor comes first.
pub fn orbit_factors(
    datum: &BasedRootDatum,
    mu: &[i64],
) -> Result<Vec<OrbitFactor>, HeckeError> {
    require_minuscule(datum, mu)?;
    let mu_dom = datum.dominant_rep(mu);
    let n = datum.reflex_degree(&mu_dom);
    let minus_mu: Vec<i64> = mu_dom.iter().map(|&c| -c).collect();
    let orbit = datum.weyl_orbit(&minus_mu);

    let mut factors = Vec::new();
    let mut visited: alloc::collections::BTreeSet<Cocharacter> = alloc::collections::BTreeSet::new();
    for rep in orbit.iter().rev() {
        if visited.contains(rep) {
            continue;
        }
        let cycle = sigma_power_orbit(datum, n, rep);
        let size = cycle.len();
        for member in cycle {
            visited.insert(member);
        }
        factors.push(factor_for_orbit(datum, &mu_dom, n, rep, size));
    }
    debug_assert_eq!(factors.iter().map(|f| f.size).sum::<usize>(), orbit.len());
    Ok(factors)
}

/// The full Hecke polynomial: the product of all orbit factors. Monic of
/// degree `|W·μ|`, with every coefficient fixed by the σ-stable dot action.
pub fn hecke_polynomial(
    datum: &BasedRootDatum,
    mu: &[i64],
) -> Result<HeckePolynomial, HeckeError> {
    let factors = orbit_factors(datum, mu)?;
    let mut product = HeckePolynomial::one(datum.rank());
    let mut degree = 0;
    for f in &factors {
        product = product.mul(&f.factor);
        degree += f.size;
    }
    assert_eq!(product.degree(), Some(degree));
    Ok(product)
}

/// Failure report for [`satake_view`]: the index of the offending
/// coefficient (as exponent of `x`) and the invariance witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeViewError {
    pub coefficient_index: usize,
    pub failure: DotInvarianceFailure,
}

impl fmt::Display for SatakeViewError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient of x^{} is not dot-invariant for the Levi: {}",
            self.coefficient_index, self.failure
        )
    }
}

/// View a single torus-algebra element through the eyes of a Levi subgroup:
/// the value is unchanged, but invariance under the Levi's σ-fixed dot
/// action is verified (in its own half-sum normalization).
pub fn satake_view_element(
    datum: &BasedRootDatum,
    levi: &LeviDatum,
    e: &TorusAlgebraElement,
) -> Result<TorusAlgebraElement, DotInvarianceFailure> {
    match dot_invariance_failure_levi(datum, levi, e) {
        None => Ok(e.clone()),
        Some(failure) => Err(failure),
    }
}

/// Coefficient-wise [`satake_view_element`] for polynomials. Succeeding
/// means the polynomial genuinely has coefficients in the Levi's invariant
/// subalgebra; the returned value is the unchanged input.
pub fn satake_view(
    datum: &BasedRootDatum,
    levi: &LeviDatum,
    poly: &HeckePolynomial,
) -> Result<HeckePolynomial, SatakeViewError> {
    for (coefficient_index, coeff) in poly.coefficients().iter().enumerate() {
        if let Some(failure) = dot_invariance_failure_levi(datum, levi, coeff) {
            return Err(SatakeViewError { coefficient_index, failure });
        }
    }
    Ok(poly.clone())
}

/// The distinguished factor attached to the dominant representative of
/// `−μ`, together with the certificates produced while checking it.
#[derive(Clone, Debug)]
pub struct NormFactorReport {
    /// `λ = dominant_rep(−μ)`.
    pub lambda: Cocharacter,
    /// `⟨σ^n⟩`-orbit size of `λ`.
    pub size: usize,
    /// `nm⟨ρ, μ−λ⟩`; zero exactly when `m = 1` realizes the linear factor
    /// `x − h_{λ̃}` with trivial normalization.
    pub exponent: i64,
    /// Full norm `λ̃ = Σ_{j=1..nm} σ^j(λ)`; dominant and σ-invariant.
    pub norm: Cocharacter,
    /// The factor `x^m − p^{exponent}·h_{λ̃}` itself.
    pub factor: HeckePolynomial,
    /// Quotient certificate: `factor · quotient` equals the full polynomial.
    pub quotient: HeckePolynomial,
    /// Simple indices of the Levi centralizing `λ̃` (where `λ̃` is central),
    /// whose σ-fixed dot action was verified to fix the factor.
    pub levi_subset: Vec<usize>,
}

/// Verify that the orbit factor of `dominant_rep(−μ)` divides the full
/// polynomial and that its coefficients are dot-invariant for the Levi
/// centralizing its norm cocharacter.
pub fn norm_factor_check(
    datum: &BasedRootDatum,
    mu: &[i64],
) -> Result<NormFactorReport, HeckeError> {
    require_minuscule(datum, mu)?;
    let mu_dom = datum.dominant_rep(mu);
    let n = datum.reflex_degree(&mu_dom);
    let minus_mu: Vec<i64> = mu_dom.iter().map(|&c| -c).collect();
    let lambda = datum.dominant_rep(&minus_mu);
    let size = sigma_power_orbit(datum, n, &lambda).len();
    let data = factor_for_orbit(datum, &mu_dom, n, &lambda, size);

    let full = hecke_polynomial(datum, &mu_dom)?;
    let quotient = full
        .exact_divide(&data.factor)
        .map_err(|_| HeckeError::NormFactorRemainder { factor: data.factor.clone() })?;

    let levi = datum.levi_centralizer(&data.norm);
    for coeff in data.factor.coefficients() {
        if let Some(failure) = dot_invariance_failure_levi(datum, &levi, coeff) {
            return Err(HeckeError::NormFactorInvariance { failure });
        }
    }

    Ok(NormFactorReport {
        lambda,
        size: data.size,
        exponent: data.exponent,
        norm: data.norm,
        factor: data.factor,
        quotient,
        levi_subset: levi.subset().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;
    use crate::torus_algebra::dot_invariance_failure;
    use alloc::format;
    use alloc::string::ToString;

    fn h(d: &BasedRootDatum, nu: &[i64]) -> TorusAlgebraElement {
        TorusAlgebraElement::h(d, nu)
    }

    #[test]
    fn gl2_two_linear_factors() {
        let (d, mu) = preset("gl2").unwrap();
        let factors = orbit_factors(&d, &mu).unwrap();
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].rep, vec![0, -1]);
        assert_eq!(factors[0].exponent, 0);
        assert_eq!(factors[0].norm, vec![0, -1]);
        assert_eq!(factors[1].rep, vec![-1, 0]);
        assert_eq!(factors[1].exponent, 1);
        assert_eq!(factors[1].norm, vec![-1, 0]);
        assert!(factors.iter().all(|f| f.size == 1));

        assert_eq!(factors[0].factor.to_string(), "x - h[0,-1]");
        assert_eq!(factors[1].factor.to_string(), "x - p*h[-1,0]");

        let full = hecke_polynomial(&d, &mu).unwrap();
        assert_eq!(
            full.to_string(),
            "x^2 - (h[0,-1] + p*h[-1,0])*x + p*h[-1,-1]"
        );
        // modular-curve shape: middle coefficient is the invariant Hecke
        // operator, constant term the diamond operator scaled by p.
        let t_p = h(&d, &[0, -1]).add(&h(&d, &[-1, 0]).scale(&LaurentPolynomial::p_power(1)));
        assert_eq!(full.coefficient(1), t_p.neg());
        assert_eq!(
            full.coefficient(0),
            h(&d, &[-1, -1]).scale(&LaurentPolynomial::p_power(1))
        );
    }

    #[test]
    fn gl3_exponent_ladder() {
        let (d, mu) = preset("gl3").unwrap();
        let factors = orbit_factors(&d, &mu).unwrap();
        let exponents: Vec<i64> = factors.iter().map(|f| f.exponent).collect();
        assert_eq!(exponents, vec![0, 1, 2]);
        let degree = hecke_polynomial(&d, &mu).unwrap().degree();
        assert_eq!(degree, Some(3));
    }

    #[test]
    fn gl2_central_mu_degenerates() {
        let (d, _) = preset("gl2").unwrap();
        let factors = orbit_factors(&d, &[1, 1]).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].exponent, 0);
        assert_eq!(factors[0].factor.to_string(), "x - h[-1,-1]");
    }

    #[test]
    fn gsp4_degree_four_ladder() {
        let (d, mu) = preset("gsp4").unwrap();
        let factors = orbit_factors(&d, &mu).unwrap();
        let reps: Vec<&Cocharacter> = factors.iter().map(|f| &f.rep).collect();
        assert_eq!(
            reps,
            vec![&vec![0, 0, -1], &vec![0, -1, -1], &vec![-1, 0, -1], &vec![-1, -1, -1]]
        );
        let exponents: Vec<i64> = factors.iter().map(|f| f.exponent).collect();
        assert_eq!(exponents, vec![0, 1, 2, 3]);
        let full = hecke_polynomial(&d, &mu).unwrap();
        assert_eq!(full.degree(), Some(4));
        for coeff in full.coefficients() {
            assert!(dot_invariance_failure(&d, d.weyl_sigma_fixed(), coeff).is_none());
        }
    }

    #[test]
    fn gsp6_degree_eight_ladder() {
        let (d, mu) = preset("gsp6").unwrap();
        let factors = orbit_factors(&d, &mu).unwrap();
        let mut exponents: Vec<i64> = factors.iter().map(|f| f.exponent).collect();
        exponents.sort_unstable();
        assert_eq!(exponents, vec![0, 1, 2, 3, 3, 4, 5, 6]);
        assert_eq!(hecke_polynomial(&d, &mu).unwrap().degree(), Some(8));
    }

    #[test]
    fn hilbert_inert_orbit_pairing() {
        let (d, mu) = preset("res_gl2_inert_g2").unwrap();
        let factors = orbit_factors(&d, &mu).unwrap();
        assert_eq!(factors.len(), 3);
        assert_eq!(factors[0].rep, vec![0, -1, 0, -1]);
        assert_eq!((factors[0].size, factors[0].exponent), (1, 0));
        assert_eq!(factors[1].rep, vec![0, -1, -1, 0]);
        assert_eq!((factors[1].size, factors[1].exponent), (2, 2));
        assert_eq!(factors[1].norm, vec![-1, -1, -1, -1]);
        assert_eq!(factors[1].factor.to_string(), "x^2 - p^2*h[-1,-1,-1,-1]");
        assert_eq!(factors[2].rep, vec![-1, 0, -1, 0]);
        assert_eq!((factors[2].size, factors[2].exponent), (1, 2));
        assert_eq!(hecke_polynomial(&d, &mu).unwrap().degree(), Some(4));
    }

    #[test]
    fn unitary_quasisplit_factors() {
        let (d, mu) = preset("u3_quasisplit").unwrap();
        let factors = orbit_factors(&d, &mu).unwrap();
        assert_eq!(factors.len(), 3);
        let rendered: Vec<_> = factors.iter().map(|f| f.factor.to_string()).collect();
        assert_eq!(rendered, vec!["x - h[1,0,-1]", "x - p^2", "x - p^4*h[-1,0,1]"]);
        assert_eq!(factors[1].norm, vec![0, 0, 0]);
    }

    #[test]
    fn factor_data_is_orbit_constant() {
        // Rebuilding a factor from any member of its orbit must give the
        // same exponent, norm, and polynomial.
        for name in ["gl3", "gsp4", "res_gl2_inert_g2", "res_gl2_inert_g3", "u3_quasisplit"] {
            let (d, mu) = preset(name).unwrap();
            let n = d.reflex_degree(&mu);
            for f in orbit_factors(&d, &mu).unwrap() {
                for member in sigma_power_orbit(&d, n, &f.rep) {
                    let rebuilt = factor_for_orbit(&d, &mu, n, &member, f.size);
                    assert_eq!(rebuilt.exponent, f.exponent, "preset {name}");
                    assert_eq!(rebuilt.norm, f.norm, "preset {name}");
                    assert_eq!(rebuilt.factor, f.factor, "preset {name}");
                }
            }
        }
    }

    #[test]
    fn product_of_factors_is_the_polynomial() {
        for name in crate::presets::PRESET_NAMES {
            let (d, mu) = preset(name).unwrap();
            let factors = orbit_factors(&d, &mu).unwrap();
            let mut product = HeckePolynomial::one(d.rank());
            for f in &factors {
                product = product.mul(&f.factor);
            }
            let full = hecke_polynomial(&d, &mu).unwrap();
            assert_eq!(product, full, "preset {name}");
            assert_eq!(
                full.degree(),
                Some(d.weyl_orbit(&mu).len()),
                "preset {name}"
            );
            for coeff in full.coefficients() {
                assert!(
                    dot_invariance_failure(&d, d.weyl_sigma_fixed(), coeff).is_none(),
                    "preset {name}: coefficient moves under the σ-fixed dot action"
                );
            }
        }
    }

    #[test]
    fn non_minuscule_is_rejected() {
        let (d, _) = preset("gl2").unwrap();
        let err = orbit_factors(&d, &[2, 0]).unwrap_err();
        match err {
            HeckeError::NonMinuscule { root, pairing } => {
                assert_eq!(root, vec![1, -1]);
                assert_eq!(pairing, 2);
            }
            other => panic!("expected NonMinuscule, got {other:?}"),
        }
        assert!(format!("{err}").contains("not minuscule"));
    }

    #[test]
    fn satake_view_levels() {
        let (d, mu) = preset("gl2").unwrap();
        let full = hecke_polynomial(&d, &mu).unwrap();
        // torus view always succeeds; full view succeeds for the invariant
        // polynomial.
        let torus = d.levi_from_indices(&[]);
        assert!(satake_view(&d, &torus, &full).is_ok());
        let g = d.full_levi();
        assert!(satake_view(&d, &g, &full).is_ok());

        // a single factor is not invariant at the full level.
        let factor = &orbit_factors(&d, &mu).unwrap()[0].factor;
        let err = satake_view(&d, &g, factor).unwrap_err();
        assert_eq!(err.coefficient_index, 0);
        assert_eq!(err.failure.witness_rows, vec![vec![0, 1], vec![1, 0]]);

        let e = h(&d, &[1, 0]);
        assert!(satake_view_element(&d, &g, &e).is_err());
        assert!(satake_view_element(&d, &torus, &e).is_ok());
    }

    #[test]
    fn norm_factor_divides_everywhere() {
        for name in crate::presets::PRESET_NAMES {
            let (d, mu) = preset(name).unwrap();
            let report = norm_factor_check(&d, &mu).unwrap();
            let full = hecke_polynomial(&d, &mu).unwrap();
            assert_eq!(report.factor.mul(&report.quotient), full, "preset {name}");
            // the norm factor must be one of the orbit factors
            let factors = orbit_factors(&d, &mu).unwrap();
            assert!(
                factors.iter().any(|f| f.factor == report.factor),
                "preset {name}"
            );
        }
    }

    #[test]
    fn norm_factor_values() {
        let (d, mu) = preset("gl2").unwrap();
        let report = norm_factor_check(&d, &mu).unwrap();
        assert_eq!(report.lambda, vec![0, -1]);
        assert_eq!(report.exponent, 0);
        assert_eq!(report.factor.to_string(), "x - h[0,-1]");
        assert_eq!(report.quotient.to_string(), "x - p*h[-1,0]");

        let (d, mu) = preset("gl3").unwrap();
        let report = norm_factor_check(&d, &mu).unwrap();
        assert_eq!(report.factor.to_string(), "x - h[0,0,-1]");

        let (d, mu) = preset("res_gl2_inert_g2").unwrap();
        let report = norm_factor_check(&d, &mu).unwrap();
        assert_eq!(report.lambda, vec![0, -1, 0, -1]);
        assert_eq!((report.size, report.exponent), (1, 0));
        assert_eq!(report.factor.to_string(), "x - h[0,-1,0,-1]");

        let (d, mu) = preset("u3_quasisplit").unwrap();
        let report = norm_factor_check(&d, &mu).unwrap();
        assert_eq!(report.lambda, vec![0, 0, -1]);
        assert_eq!(report.norm, vec![1, 0, -1]);
        assert_eq!(report.exponent, 0);
        assert_eq!(report.factor.to_string(), "x - h[1,0,-1]");
        // λ̃ = (1,0,−1) is regular, so the centralizer Levi is the torus.
        assert!(report.levi_subset.is_empty());
    }
}
