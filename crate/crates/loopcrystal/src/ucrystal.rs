//! Geometric crystal structure on U^{<=m}: eps/phi as entry ratios, the
//! two-sided Chevalley action, the four-case action on loop elementary
//! symmetric functions, and the quotient identification with the product
//! crystal.

use crate::crystal::{product_stats, ProductPoint, Stats};
use crate::error::{Error, Result};
use crate::loopsym::loop_e;
use crate::poly::canon_color;
use crate::rational::Rat;
use crate::whirl::{chevalley, from_factors, PeriodicBandedMatrix};

/// Band parameter (the number of whirl factors) fixing the crystal on U.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UCrystalContext {
    pub n: usize,
    pub m: usize,
}

/// eps_k(Y) = y_{k+1,k+m+1} / y_{k+1,k+m} and
/// phi_k(Y) = y_{k,k+m} / y_{k+1,k+m}.
pub fn u_stats(y: &PeriodicBandedMatrix, k: i64, ctx: UCrystalContext) -> Result<(Rat, Rat)> {
    let m = ctx.m as i64;
    let denom = y.entry(k + 1, k + m);
    if denom.is_zero() {
        return Err(Error::Pole(format!("matrix entry ({}, {})", k + 1, k + m)));
    }
    let eps = &y.entry(k + 1, k + m + 1) / &denom;
    let phi = &y.entry(k, k + m) / &denom;
    Ok((eps, phi))
}

/// The crystal operator on U^{<=m}:
/// Y -> u_k((c-1) phi_k) Y u_{k+m}((c^{-1}-1) eps_k).
pub fn u_e(
    y: &PeriodicBandedMatrix,
    k: i64,
    c: &Rat,
    ctx: UCrystalContext,
) -> Result<PeriodicBandedMatrix> {
    if c.is_zero() {
        return Err(Error::InvalidInput("c must be nonzero".into()));
    }
    let (eps, phi) = u_stats(y, k, ctx)?;
    let n = ctx.n;
    let left = chevalley(k, &(&(c - &Rat::one()) * &phi), n);
    let right = chevalley(k + ctx.m as i64, &(&(&c.recip() - &Rat::one()) * &eps), n);
    let out = left.multiply(y)?.multiply(&right)?;
    assert!(
        y.band() > ctx.m || out.band() <= ctx.m,
        "crystal operator left U^<={}: band {}",
        ctx.m,
        out.band()
    );
    Ok(out)
}

fn case_value(
    r: i64,
    s: i64,
    k: i64,
    c: &Rat,
    stats: &Stats,
    x: &ProductPoint,
) -> Result<Rat> {
    let n = x.n();
    let m = x.m();
    let assignment = x.assignment();
    let ev = |r: i64, s: i64| -> Result<Rat> {
        loop_e(r, s, n, m).eval(&assignment)
    };
    let s_is_k = canon_color(s, n) == canon_color(k, n);
    let s_is_tail = canon_color(s, n) == canon_color(k + m as i64 - r + 1, n);
    let c1 = c - &Rat::one();
    let cinv1 = &c.recip() - &Rat::one();
    Ok(match (s_is_k, s_is_tail) {
        (true, false) => ev(r, k)? + &c1 * &stats.phi * ev(r - 1, k + 1)?,
        (false, true) => {
            let t = k + m as i64 - r + 1;
            ev(r, t)? + &cinv1 * &stats.eps * ev(r - 1, t)?
        }
        (true, true) => {
            // -(1-c)^2/c = c1 * cinv1
            ev(r, k)?
                + &c1 * &stats.phi * ev(r - 1, k + 1)?
                + &cinv1 * &stats.eps * ev(r - 1, k)?
                + &(&c1 * &cinv1) * &(&stats.eps * &stats.phi) * ev(r - 2, k + 1)?
        }
        (false, false) => ev(r, s)?,
    })
}

/// The image value (e_k^c)* e_r^{(s)} at x, by the four-case rule.
pub fn thm_e_image(r: i64, s: i64, k: i64, c: &Rat, x: &ProductPoint) -> Result<Rat> {
    let stats = product_stats(x, k)?;
    case_value(r, s, k, c, &stats, x)
}

/// True iff the whirl embedding intertwines the product-crystal operator
/// with the U-crystal operator at (x, k, c), and every band entry of the
/// image matches the four-case rule.
pub fn quotient_check(x: &ProductPoint, k: i64, c: &Rat) -> Result<bool> {
    let n = x.n();
    let m = x.m();
    let ctx = UCrystalContext { n, m };
    let moved_point = crate::crystal::product_e(x, k, c)?;
    let lhs = from_factors(&moved_point);
    let rhs = u_e(&from_factors(x), k, c, ctx)?;
    if lhs != rhs {
        return Ok(false);
    }
    for s in 1..=n as i64 {
        for r in 1..=m as i64 {
            let expect = thm_e_image(r, s, k, c, x)?;
            if rhs.entry(s, s + r) != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::FactorPoint;
    use crate::whirl::whirl;

    fn fp(coords: &[i64]) -> FactorPoint {
        FactorPoint::new(coords.iter().map(|&c| Rat::from(c)).collect()).unwrap()
    }

    fn running_point() -> ProductPoint {
        ProductPoint::new(vec![fp(&[2, 3]), fp(&[5, 7])]).unwrap()
    }

    const CTX22: UCrystalContext = UCrystalContext { n: 2, m: 2 };

    #[test]
    fn u_stats_running_point() {
        // phi_1 = e_2^{(1)}/e_1^{(2)} = 14/10, eps_1 = e_2^{(2)}/e_1^{(2)} = 15/10
        let y = from_factors(&running_point());
        let (eps, phi) = u_stats(&y, 1, CTX22).unwrap();
        assert_eq!(eps, Rat::new(3, 2));
        assert_eq!(phi, Rat::new(7, 5));
    }

    #[test]
    fn u_stats_agrees_with_product_stats() {
        let x = ProductPoint::new(vec![fp(&[2, 3, 5]), fp(&[7, 11, 13]), fp(&[1, 4, 9])]).unwrap();
        let y = from_factors(&x);
        let ctx = UCrystalContext { n: 3, m: 3 };
        for k in 1..=3i64 {
            let (eps, phi) = u_stats(&y, k, ctx).unwrap();
            let s = product_stats(&x, k).unwrap();
            assert_eq!(eps, s.eps);
            assert_eq!(phi, s.phi);
        }
    }

    #[test]
    fn u_stats_pole_at_identity() {
        let y = PeriodicBandedMatrix::identity(2);
        assert!(matches!(u_stats(&y, 1, CTX22), Err(Error::Pole(_))));
    }

    #[test]
    fn u_e_identity_at_c1() {
        let y = from_factors(&running_point());
        assert_eq!(u_e(&y, 1, &Rat::one(), CTX22).unwrap(), y);
    }

    #[test]
    fn u_e_worked_entries() {
        // k=1, c=2: entry (1,3) -> 28, (2,4) -> 15/2, (1,2) -> 153/20, (2,3) stays 10
        let y = from_factors(&running_point());
        let out = u_e(&y, 1, &Rat::from(2), CTX22).unwrap();
        assert_eq!(out.entry(1, 3), Rat::from(28));
        assert_eq!(out.entry(2, 4), Rat::new(15, 2));
        assert_eq!(out.entry(1, 2), Rat::new(153, 20));
        assert_eq!(out.entry(2, 3), Rat::from(10));
        assert!(out.band() <= 2);
    }

    #[test]
    fn u_e_scales_eps() {
        let y = from_factors(&running_point());
        let c = Rat::new(5, 3);
        for k in 1..=2i64 {
            let (eps0, phi0) = u_stats(&y, k, CTX22).unwrap();
            let (eps1, phi1) = u_stats(&u_e(&y, k, &c, CTX22).unwrap(), k, CTX22).unwrap();
            assert_eq!(eps1, &eps0 / &c);
            assert_eq!(phi1, &phi0 * &c);
        }
    }

    #[test]
    fn thm_cases_worked_values() {
        let x = running_point();
        let c = Rat::from(2);
        // r=2, s=1 is case 1: 14 + (7/5)*10 = 28
        assert_eq!(thm_e_image(2, 1, 1, &c, &x).unwrap(), Rat::from(28));
        // r=1, s=1 is case 3: 7 + 7/5 - 3/4 = 153/20
        assert_eq!(thm_e_image(1, 1, 1, &c, &x).unwrap(), Rat::new(153, 20));
        // r=1, s=2 is case 4: unchanged 10
        assert_eq!(thm_e_image(1, 2, 1, &c, &x).unwrap(), Rat::from(10));
    }

    #[test]
    fn thm_cases_at_c1_are_identity() {
        let x = ProductPoint::new(vec![fp(&[2, 3, 5]), fp(&[7, 11, 13])]).unwrap();
        let assignment = x.assignment();
        for k in 1..=3i64 {
            for s in 1..=3i64 {
                for r in 1..=2i64 {
                    let image = thm_e_image(r, s, k, &Rat::one(), &x).unwrap();
                    let plain = loop_e(r, s, 3, 2).eval(&assignment).unwrap();
                    assert_eq!(image, plain, "k={k} s={s} r={r}");
                }
            }
        }
    }

    #[test]
    fn case_classification_exhaustive() {
        // over s in 1..=n exactly one color matches k, exactly one matches
        // k+m-r+1, and they coincide precisely when m-r+1 = 0 mod n
        for n in 2..=4usize {
            for m in 1..=4usize {
                for k in 1..=n as i64 {
                    for r in 1..=m as i64 {
                        let mut hits_k = 0;
                        let mut hits_tail = 0;
                        let mut hits_both = 0;
                        for s in 1..=n as i64 {
                            let s_is_k = canon_color(s, n) == canon_color(k, n);
                            let tail = canon_color(s, n)
                                == canon_color(k + m as i64 - r + 1, n);
                            hits_k += s_is_k as usize;
                            hits_tail += tail as usize;
                            hits_both += (s_is_k && tail) as usize;
                        }
                        assert_eq!(hits_k, 1);
                        assert_eq!(hits_tail, 1);
                        let coincide = (m as i64 - r + 1).rem_euclid(n as i64) == 0;
                        assert_eq!(hits_both == 1, coincide, "n={n} m={m} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_check_running_point() {
        let x = running_point();
        assert!(quotient_check(&x, 1, &Rat::from(2)).unwrap());
        assert!(quotient_check(&x, 1, &Rat::one()).unwrap());
        assert!(quotient_check(&x, 2, &Rat::new(7, 3)).unwrap());
    }

    #[test]
    fn quotient_check_n3() {
        let x = ProductPoint::new(vec![fp(&[2, 3, 5]), fp(&[7, 11, 13]), fp(&[1, 4, 9])]).unwrap();
        for k in 1..=3i64 {
            assert!(quotient_check(&x, k, &Rat::new(5, 2)).unwrap(), "k={k}");
        }
    }

    #[test]
    fn single_whirl_quotient() {
        let x = ProductPoint::new(vec![fp(&[2, 3])]).unwrap();
        assert!(quotient_check(&x, 1, &Rat::new(3, 4)).unwrap());
        let y = whirl(&fp(&[2, 3]));
        let ctx = UCrystalContext { n: 2, m: 1 };
        // m=1 reduces to the basic crystal: eps_1 = x^{(2)}, phi_1 = x^{(1)}
        let (eps, phi) = u_stats(&y, 1, ctx).unwrap();
        assert_eq!(eps, Rat::from(3));
        assert_eq!(phi, Rat::from(2));
    }
}
