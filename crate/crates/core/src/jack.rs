//! Nonsymmetric Jack polynomials `ζ_α` as simultaneous eigenfunctions of the
//! operators `U_i`, computed exactly over `ℚ(κ)`.
//!
//! `U_i p = ∂_i(x_i p) + κ Σ_{j≠i} (x_i p − x_j p^{(ij)})/(x_i − x_j) − κ Σ_{j<i} p^{(ij)}`
//! where `p^{(ij)}` swaps `x_i` and `x_j`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::composition::{triangle_greater, Composition};
use crate::critical::is_critical_pair;
use crate::error::{Error, Result};
use crate::hooks::{factor_multiplicity, hook_factors_all, Affine};
use crate::kappa::{KappaPoly, KappaRational};
use crate::multipoly::{Exponent, MultiPoly};
use crate::oracle::for_each_composition;

/// Default refusal threshold on the number of degree-`|α|` monomials.
pub const DEFAULT_MONOMIAL_CAP: u64 = 20_000;

/// An integer affine coefficient `aκ + b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearCoeff {
    pub kappa: i64,
    pub constant: i64,
}

impl LinearCoeff {
    pub fn is_zero(&self) -> bool {
        self.kappa == 0 && self.constant == 0
    }

    pub fn to_poly(self) -> KappaPoly {
        KappaPoly::linear(self.kappa, self.constant)
    }
}

fn bump(map: &mut BTreeMap<Exponent, LinearCoeff>, e: Exponent, kappa: i64, constant: i64) {
    let entry = map.entry(e).or_default();
    entry.kappa += kappa;
    entry.constant += constant;
}

/// `U_i x^α` for a 1-based `i`, expanded through the closed forms of the
/// divided differences.
pub fn u_apply_monomial(i: usize, exponent: &[u32]) -> BTreeMap<Exponent, LinearCoeff> {
    let nvars = exponent.len();
    let ii = i - 1;
    let mut out = BTreeMap::new();
    bump(&mut out, exponent.to_vec(), 0, exponent[ii] as i64 + 1);
    for jj in (0..nvars).filter(|&j| j != ii) {
        let (u, v) = (exponent[ii], exponent[jj]);
        if u >= v {
            for t in 0..=u - v {
                let mut e = exponent.to_vec();
                e[ii] = u - t;
                e[jj] = v + t;
                bump(&mut out, e, 1, 0);
            }
        } else if v >= u + 2 {
            for t in 0..=v - u - 2 {
                let mut e = exponent.to_vec();
                e[ii] = v - 1 - t;
                e[jj] = u + 1 + t;
                bump(&mut out, e, -1, 0);
            }
        }
    }
    for jj in 0..ii {
        let mut e = exponent.to_vec();
        e.swap(ii, jj);
        bump(&mut out, e, -1, 0);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(x_i x^α − x_j x^{(ij)α}) / (x_i − x_j)` by long division in `x_i`;
/// a cross-check on the closed forms used in [`u_apply_monomial`].
pub fn divided_difference_by_division(i: usize, j: usize, exponent: &[u32]) -> BTreeMap<Exponent, i64> {
    let (ii, jj) = (i - 1, j - 1);
    // bivariate in (x_i, x_j): (deg_i, deg_j) -> coefficient
    let mut dividend: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    let (u, v) = (exponent[ii], exponent[jj]);
    *dividend.entry((u + 1, v)).or_default() += 1;
    *dividend.entry((v, u + 1)).or_default() -= 1;
    dividend.retain(|_, c| *c != 0);
    let mut quotient: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    while let Some((&(a, b), &c)) = dividend.iter().next_back() {
        if a == 0 {
            break;
        }
        dividend.remove(&(a, b));
        *quotient.entry((a - 1, b)).or_default() += c;
        let rem = dividend.entry((a - 1, b + 1)).or_default();
        *rem += c;
        if *rem == 0 {
            dividend.remove(&(a - 1, b + 1));
        }
    }
    assert!(dividend.is_empty(), "x_i − x_j must divide the numerator");
    quotient
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((a, b), c)| {
            let mut e = exponent.to_vec();
            e[ii] = a;
            e[jj] = b;
            (e, c)
        })
        .collect()
}

/// `U_i p` for a polynomial in `nvars` variables.
pub fn u_apply(i: usize, p: &MultiPoly, nvars: usize) -> Result<MultiPoly> {
    if p.nvars() != nvars {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            got: p.nvars(),
        });
    }
    if i == 0 || i > nvars {
        return Err(Error::IndexOutOfRange { index: i, len: nvars });
    }
    let mut out = MultiPoly::zero(nvars);
    for (e, c) in p.terms() {
        for (f, lin) in u_apply_monomial(i, e) {
            out.add_term(f, &c.mul_poly(&lin.to_poly()))?;
        }
    }
    Ok(out)
}

fn pad_to_vars(alpha: &Composition, nvars: usize) -> Result<Composition> {
    if alpha.length() > nvars {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            got: alpha.length(),
        });
    }
    Ok(alpha.trimmed().padded(nvars))
}

fn xi_linear(alpha: &Composition, ranks: &[usize], i: usize) -> LinearCoeff {
    LinearCoeff {
        kappa: alpha.ambient() as i64 - ranks[i - 1] as i64,
        constant: alpha.part(i) as i64 + 1,
    }
}

/// `ξ_i(α) = (N − r(α,i))κ + α_i + 1`.
pub fn xi_eigenvalue(alpha: &Composition, i: usize, nvars: usize) -> Result<Affine> {
    let alpha = pad_to_vars(alpha, nvars)?;
    if i == 0 || i > nvars {
        return Err(Error::IndexOutOfRange { index: i, len: nvars });
    }
    let lin = xi_linear(&alpha, &alpha.rank_vector(), i);
    Ok(Affine::integer(lin.kappa, lin.constant))
}

/// Number of monomials of degree `weight` in `nvars` variables, or `None` on overflow.
pub fn monomial_count(weight: u64, nvars: usize) -> Option<u64> {
    crate::oracle::composition_count(weight, nvars)
}

pub fn zeta(alpha: &Composition, nvars: usize) -> Result<MultiPoly> {
    zeta_with_cap(alpha, nvars, DEFAULT_MONOMIAL_CAP)
}

/// `ζ_α = x^α + Σ_{β⊲α} A_β x^β` by back-substitution along a linear
/// extension of `⊳`.
pub fn zeta_with_cap(alpha: &Composition, nvars: usize, monomial_cap: u64) -> Result<MultiPoly> {
    let alpha = pad_to_vars(alpha, nvars)?;
    let weight = alpha.weight();
    let count = monomial_count(weight, nvars);
    if count.is_none_or(|c| c > monomial_cap) {
        return Err(Error::TooLarge(format!(
            "{} monomials of degree {weight} in {nvars} variables exceed the cap of {monomial_cap}",
            count.map_or_else(|| "too many".to_string(), |c| c.to_string())
        )));
    }
    if nvars == 0 {
        return Ok(MultiPoly::monomial(Vec::new()));
    }

    let mut below: Vec<Composition> = Vec::new();
    let mut buf = vec![0u32; nvars];
    for_each_composition(weight, weight, &mut buf, 0, &mut |parts| {
        let beta = Composition::new(parts.to_vec());
        if triangle_greater(&alpha, &beta) {
            below.push(beta);
        }
    });
    // descending lexicographic order on (β⁺, β) extends ⊳
    let mut keyed: Vec<(Composition, Composition)> =
        below.into_iter().map(|b| (b.sorted(), b)).collect();
    keyed.sort_by(|x, y| y.cmp(x));

    let alpha_ranks = alpha.rank_vector();
    let alpha_xi: Vec<LinearCoeff> = (1..=nvars).map(|i| xi_linear(&alpha, &alpha_ranks, i)).collect();

    // acc[i][β] = Σ_γ A_γ ⟨U_{i+1} x^γ, x^β⟩ over processed γ ≠ β
    let mut acc: Vec<HashMap<Exponent, KappaRational>> = vec![HashMap::new(); nvars];
    let mut zeta = MultiPoly::monomial(alpha.parts().to_vec());
    push_contributions(&mut acc, alpha.parts(), &KappaRational::one());

    for (_, beta) in keyed {
        let i = (1..=nvars)
            .find(|&i| alpha.part(i) != beta.part(i))
            .ok_or_else(|| Error::Internal("no separating index".into()))?;
        let Some(sum) = acc[i - 1].remove(beta.parts()) else {
            continue;
        };
        if sum.is_zero() {
            continue;
        }
        let beta_xi = xi_linear(&beta, &beta.rank_vector(), i);
        let a = alpha_xi[i - 1];
        let gap = LinearCoeff {
            kappa: a.kappa - beta_xi.kappa,
            constant: a.constant - beta_xi.constant,
        };
        let coeff = sum.div(&KappaRational::from_poly(gap.to_poly()))?;
        push_contributions(&mut acc, beta.parts(), &coeff);
        zeta.add_term(beta.into_parts(), &coeff)?;
    }
    Ok(zeta)
}

fn push_contributions(acc: &mut [HashMap<Exponent, KappaRational>], gamma: &[u32], coeff: &KappaRational) {
    for (i, slot) in acc.iter_mut().enumerate() {
        for (e, lin) in u_apply_monomial(i + 1, gamma) {
            if e == gamma {
                continue;
            }
            let term = coeff.mul_poly(&lin.to_poly());
            match slot.get_mut(&e) {
                Some(existing) => *existing = &*existing + &term,
                None => {
                    slot.insert(e, term);
                }
            }
        }
    }
}

/// `h(α, κ+1)` as a polynomial.
pub fn hook_product(alpha: &Composition) -> KappaPoly {
    hook_factors_all(alpha, Affine::kappa_plus_one())
        .iter()
        .fold(KappaPoly::one(), |acc, h| {
            let (m, n) = h.integer_pair().expect("κ+1 hooks are positive integers");
            &acc * &KappaPoly::linear(m as i64, n as i64)
        })
}

/// A linear factor `mκ + n` of the common denominator, i.e. a pole at `κ = −n/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PoleFactor {
    pub m: u64,
    pub n: i64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JackReport {
    pub alpha: Composition,
    pub nvars: usize,
    pub zeta: MultiPoly,
    pub hook_product: KappaPoly,
    pub denominator_lcm: KappaPoly,
    pub pole_factors: Vec<PoleFactor>,
    /// Every coefficient of `h(α,κ+1)·ζ_α` lies in `ℕ₀[κ]`.
    pub knop_sahi_ok: bool,
    /// The coefficient of `x_{k+1}⋯x_{k+l}` equals `l!κ^l/h(α,κ+1)`;
    /// `None` when `nvars < ℓ(α)+|α|` and that monomial does not exist.
    pub trailing_coeff_ok: Option<bool>,
    /// Every pole factor is proportional to some hook factor of `α`.
    pub poles_within_hooks: bool,
}

pub fn knop_sahi_report(alpha: &Composition, nvars: usize) -> Result<JackReport> {
    knop_sahi_report_with_cap(alpha, nvars, DEFAULT_MONOMIAL_CAP)
}

pub fn knop_sahi_report_with_cap(alpha: &Composition, nvars: usize, monomial_cap: u64) -> Result<JackReport> {
    let zeta = zeta_with_cap(alpha, nvars, monomial_cap)?;
    let alpha = pad_to_vars(alpha, nvars)?;
    let h = hook_product(&alpha);

    let mut knop_sahi_ok = true;
    let mut lcm = KappaPoly::one();
    for (_, c) in zeta.terms() {
        let (prod, rem) = (c.numerator() * &h).div_rem(c.denominator());
        if !rem.is_zero() || !prod.is_nonnegative_integral() {
            knop_sahi_ok = false;
        }
        let g = lcm.gcd(c.denominator());
        lcm = (&lcm * c.denominator()).div_rem(&g).0;
    }
    let (_, prim) = lcm.primitive_part();
    let denominator_lcm = KappaPoly::from_bigints(&prim);

    let (_, linear) = denominator_lcm.linear_factors()?;
    let to_u64 = |b: &BigInt| b.to_u64().ok_or_else(|| Error::TooLarge(format!("factor coefficient {b}")));
    let to_i64 = |b: &BigInt| b.to_i64().ok_or_else(|| Error::TooLarge(format!("factor coefficient {b}")));
    let pole_factors = linear
        .iter()
        .map(|f| {
            Ok(PoleFactor {
                m: to_u64(&f.m)?,
                n: to_i64(&f.n)?,
                multiplicity: f.multiplicity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let poles_within_hooks = pole_factors.iter().all(|p| {
        p.n > 0 && factor_multiplicity(&alpha, p.m, p.n as u64).is_ok_and(|k| k > 0)
    });

    let (k, l) = (alpha.length(), alpha.weight() as usize);
    let trailing_coeff_ok = (k + l <= nvars).then(|| {
        let mut e = vec![0u32; nvars];
        e[k..k + l].iter_mut().for_each(|x| *x = 1);
        let factorial: BigInt = (1..=l as u64).map(BigInt::from).product();
        let expected = KappaRational::new(
            KappaPoly::monomial(BigRational::from_integer(factorial), l),
            h.clone(),
        )
        .expect("hook product is nonzero");
        zeta.coeff(&e) == expected
    });

    Ok(JackReport {
        alpha,
        nvars,
        zeta,
        hook_product: h,
        denominator_lcm,
        pole_factors,
        knop_sahi_ok,
        trailing_coeff_ok,
        poles_within_hooks,
    })
}

/// With `κ = −n/m`, whether `ξ_i(α) = ξ_i(β)` for every `i`. Only defined
/// for certified pairs.
pub fn xi_specialization_match(alpha: &Composition, beta: &Composition, m: u64, n: u64) -> Result<bool> {
    if is_critical_pair(alpha, beta, m, n, false)?.is_none() {
        return Err(Error::Uncertified);
    }
    let nvars = alpha.ambient().max(beta.ambient());
    let (a, b) = (alpha.padded(nvars), beta.padded(nvars));
    let (ra, rb) = (a.rank_vector(), b.rank_vector());
    let (m, n) = (m as i64, n as i64);
    // m·ξ_i(−n/m) = −n(N − r) + m(part + 1)
    let scaled = |part: u32, rank: usize| -n * (nvars as i64 - rank as i64) + m * (part as i64 + 1);
    Ok((0..nvars).all(|i| scaled(a.parts()[i], ra[i]) == scaled(b.parts()[i], rb[i])))
}

fn poly_strings(p: &KappaPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

#[derive(Serialize)]
struct CoefficientEntry<'a> {
    exponent: &'a [u32],
    numerator: Vec<String>,
    denominator: Vec<String>,
    value: String,
}

impl Serialize for JackReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coefficients: Vec<CoefficientEntry> = self
            .zeta
            .terms()
            .map(|(e, c)| CoefficientEntry {
                exponent: e,
                numerator: poly_strings(c.numerator()),
                denominator: poly_strings(c.denominator()),
                value: c.to_string(),
            })
            .collect();
        let mut s = serializer.serialize_struct("JackReport", 9)?;
        s.serialize_field("composition", &self.alpha)?;
        s.serialize_field("N", &self.nvars)?;
        s.serialize_field("coefficients", &coefficients)?;
        s.serialize_field("hook_product", &poly_strings(&self.hook_product))?;
        s.serialize_field("denominator_lcm", &poly_strings(&self.denominator_lcm))?;
        s.serialize_field("pole_factors", &self.pole_factors)?;
        s.serialize_field("knop_sahi_ok", &self.knop_sahi_ok)?;
        s.serialize_field("trailing_coeff_ok", &self.trailing_coeff_ok)?;
        s.serialize_field("poles_within_hooks", &self.poles_within_hooks)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn rat(num: &[i64], den: &[i64]) -> KappaRational {
        KappaRational::new(KappaPoly::from_ints(num), KappaPoly::from_ints(den)).unwrap()
    }

    fn lin(kappa: i64, constant: i64) -> LinearCoeff {
        LinearCoeff { kappa, constant }
    }

    #[test]
    fn operator_on_degree_one() {
        let u1 = u_apply_monomial(1, &[1, 0]);
        assert_eq!(u1.len(), 2);
        assert_eq!(u1[&vec![1, 0]], lin(1, 2));
        assert_eq!(u1[&vec![0, 1]], lin(1, 0));

        let u2 = u_apply_monomial(2, &[1, 0]);
        assert_eq!(u2[&vec![1, 0]], lin(0, 1));
        assert_eq!(u2[&vec![0, 1]], lin(-1, 0));
    }

    #[test]
    fn operator_on_constants() {
        for nvars in 1..=4 {
            for i in 1..=nvars {
                let out = u_apply_monomial(i, &vec![0; nvars]);
                assert_eq!(out.len(), 1);
                assert_eq!(out[&vec![0; nvars]], lin((nvars - i) as i64, 1));
                assert_eq!(
                    xi_eigenvalue(&Composition::zeros(nvars), i, nvars).unwrap(),
                    Affine::integer((nvars - i) as i64, 1)
                );
            }
        }
    }

    #[test]
    fn closed_forms_match_division() {
        for e in [[3u32, 1, 0], [0, 2, 5], [1, 2, 2], [4, 0, 3]] {
            for i in 1..=3 {
                for j in (1..=3).filter(|&j| j != i) {
                    let by_division = divided_difference_by_division(i, j, &e);
                    // isolate the j-term of the closed form
                    let (u, v) = (e[i - 1], e[j - 1]);
                    let mut closed: BTreeMap<Exponent, i64> = BTreeMap::new();
                    if u >= v {
                        for t in 0..=u - v {
                            let mut f = e.to_vec();
                            f[i - 1] = u - t;
                            f[j - 1] = v + t;
                            *closed.entry(f).or_default() += 1;
                        }
                    } else if v >= u + 2 {
                        for t in 0..=v - u - 2 {
                            let mut f = e.to_vec();
                            f[i - 1] = v - 1 - t;
                            f[j - 1] = u + 1 + t;
                            *closed.entry(f).or_default() -= 1;
                        }
                    }
                    assert_eq!(by_division, closed, "e={e:?} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(xi_eigenvalue(&c("1,0"), 1, 2).unwrap(), Affine::integer(1, 2));
        assert_eq!(xi_eigenvalue(&c("1,0"), 2, 2).unwrap(), Affine::integer(0, 1));
        assert!(xi_eigenvalue(&c("1,0"), 3, 2).is_err());
        assert!(xi_eigenvalue(&c("0,0,1"), 1, 2).is_err());
    }

    #[test]
    fn zeta_of_degree_one() {
        let z = zeta(&c("1,0"), 2).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.coeff(&[1, 0]), KappaRational::one());
        assert_eq!(z.coeff(&[0, 1]), rat(&[0, 1], &[1, 1]));

        let single = zeta(&c("3"), 1).unwrap();
        assert_eq!(single, MultiPoly::monomial(vec![3]));
    }

    #[test]
    fn zeta_is_an_eigenfunction() {
        for (alpha, nvars) in [("2,0,1", 3), ("0,2", 2), ("1,1,0", 3), ("0,1,2", 3)] {
            let a = c(alpha);
            let z = zeta(&a, nvars).unwrap();
            for i in 1..=nvars {
                let xi = xi_eigenvalue(&a, i, nvars).unwrap();
                let lin = KappaPoly::linear(*xi.kappa.numer(), *xi.constant.numer());
                let lhs = u_apply(i, &z, nvars).unwrap();
                let rhs = z.scale(&KappaRational::from_poly(lin));
                assert_eq!(lhs, rhs, "alpha={alpha} i={i}");
            }
        }
    }

    #[test]
    fn report_for_degree_one() {
        let r = knop_sahi_report(&c("1,0"), 2).unwrap();
        assert!(r.knop_sahi_ok);
        assert_eq!(r.trailing_coeff_ok, Some(true));
        assert_eq!(r.hook_product, KappaPoly::linear(1, 1));
        assert_eq!(
            r.pole_factors,
            vec![PoleFactor {
                m: 1,
                n: 1,
                multiplicity: 1
            }]
        );
        assert!(r.poles_within_hooks);

        let trivial = knop_sahi_report(&c("1"), 1).unwrap();
        assert!(trivial.pole_factors.is_empty());
        assert_eq!(trivial.denominator_lcm, KappaPoly::one());
        assert_eq!(trivial.trailing_coeff_ok, None);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            zeta_with_cap(&c("3,0,0"), 3, 5),
            Err(Error::TooLarge(_))
        ));
        assert!(zeta(&c("1,0,1"), 2).is_err());
    }

    #[test]
    fn specialization() {
        let alpha = c("9,8,8,7,4,3,3,2,2");
        let beta = c("0,2,2,1,7,6,6,5,5,3,3,3,3");
        assert!(xi_specialization_match(&alpha, &beta, 4, 3).unwrap());
        assert!(xi_specialization_match(&c("1,0"), &c("0,1"), 1, 1).unwrap());
        assert_eq!(
            xi_specialization_match(&c("1,0"), &c("0,1"), 2, 1),
            Err(Error::Uncertified)
        );
    }
}
