//! The birational R-matrix action of S_m on the product crystal, via the
//! transpositions s_j and the kappa functions.

use crate::crystal::{FactorPoint, ProductPoint};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// κ_r(x, y) = Σ_{s=0}^{n-1} Π_{t=1}^{s} y^{(r+t)} · Π_{t=s+1}^{n-1} x^{(r+t)},
/// superscripts mod n. n-periodic in r.
pub fn kappa(x: &FactorPoint, y: &FactorPoint, r: i64) -> Rat {
    let n = x.n() as i64;
    let mut total = Rat::zero();
    for s in 0..n {
        let mut term = Rat::one();
        for t in 1..=s {
            term *= y.coord(r + t).clone();
        }
        for t in (s + 1)..n {
            term *= x.coord(r + t).clone();
        }
        total += term;
    }
    total
}

/// Applies the R-matrix transposition s_j (1 <= j <= m-1), replacing factors
/// j and j+1 and fixing the rest.
pub fn apply_s(j: usize, x: &ProductPoint) -> Result<ProductPoint> {
    let n = x.n();
    let m = x.m();
    if j < 1 || j > m - 1 {
        return Err(Error::InvalidInput(format!(
            "transposition index {j} out of range 1..={}",
            m - 1
        )));
    }
    let xj = x.factor(j);
    let xj1 = x.factor(j + 1);
    let kappas: Vec<Rat> = (1..=n as i64).map(|r| kappa(xj, xj1, r)).collect();
    let kap = |r: i64| -> Result<&Rat> {
        let k = &kappas[crate::poly::canon_color(r, n) - 1];
        if k.is_zero() {
            Err(Error::Pole(format!("kappa_{}(x_{j}, x_{})", r, j + 1)))
        } else {
            Ok(k)
        }
    };
    let mut new_j = Vec::with_capacity(n);
    let mut new_j1 = Vec::with_capacity(n);
    for r in 1..=n as i64 {
        new_j.push(&(xj1.coord(r + 1) * kap(r + 1)?) / kap(r)?);
        new_j1.push(&(xj.coord(r - 1) * kap(r - 1)?) / kap(r)?);
    }
    Ok(x
        .with_factor(j, FactorPoint::new(new_j)?)
        .with_factor(j + 1, FactorPoint::new(new_j1)?))
}

/// Left-to-right composition of transpositions; reports the failing position
/// on a pole.
pub fn apply_word(word: &[usize], x: &ProductPoint) -> Result<ProductPoint> {
    let mut cur = x.clone();
    for (position, &j) in word.iter().enumerate() {
        cur = apply_s(j, &cur).map_err(|e| Error::WordPole {
            position,
            source: Box::new(e),
        })?;
    }
    Ok(cur)
}

/// The full S_m orbit of a point under the R-matrix action, generated by
/// closure under s_1..s_{m-1}. Desk scale: m! points.
pub fn orbit(x: &ProductPoint) -> Result<Vec<ProductPoint>> {
    let m = x.m();
    let mut points = vec![x.clone()];
    let mut frontier = vec![x.clone()];
    while let Some(p) = frontier.pop() {
        for j in 1..m {
            let q = apply_s(j, &p)?;
            if !points.contains(&q) {
                points.push(q.clone());
                frontier.push(q);
            }
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::product_e;
    use crate::crystal::product_stats;

    fn fp(coords: &[i64]) -> FactorPoint {
        FactorPoint::new(coords.iter().map(|&c| Rat::from(c)).collect()).unwrap()
    }

    fn running_point() -> ProductPoint {
        ProductPoint::new(vec![fp(&[2, 3]), fp(&[5, 7])]).unwrap()
    }

    #[test]
    fn kappa_n2_direct() {
        // n=2: kappa_r = x^{(r+1)} + y^{(r+1)}; at x=(2,3), y=(5,7), r=1 -> 10
        assert_eq!(kappa(&fp(&[2, 3]), &fp(&[5, 7]), 1), Rat::from(10));
        assert_eq!(kappa(&fp(&[2, 3]), &fp(&[5, 7]), 2), Rat::from(7));
    }

    #[test]
    fn kappa_n3_three_summands() {
        // kappa_r = x^{(r+1)}x^{(r+2)} + y^{(r+1)}x^{(r+2)} + y^{(r+1)}y^{(r+2)}
        let x = fp(&[2, 3, 5]);
        let y = fp(&[7, 11, 13]);
        for r in 1..=3i64 {
            let expect = x.coord(r + 1) * x.coord(r + 2)
                + y.coord(r + 1) * x.coord(r + 2)
                + y.coord(r + 1) * y.coord(r + 2);
            assert_eq!(kappa(&x, &y, r), expect);
        }
    }

    #[test]
    fn kappa_all_ones_is_n() {
        for n in 2..=5 {
            let ones = FactorPoint::new(vec![Rat::one(); n]).unwrap();
            assert_eq!(kappa(&ones, &ones, 1), Rat::from(n as i64));
        }
    }

    #[test]
    fn apply_s_running_point() {
        let y = apply_s(1, &running_point()).unwrap();
        assert_eq!(y.factor(1).coords(), &[Rat::new(49, 10), Rat::new(50, 7)]);
        assert_eq!(y.factor(2).coords(), &[Rat::new(21, 10), Rat::new(20, 7)]);
        // the per-factor coordinate products are swapped
        assert_eq!(y.factor(1).coord_product(), Rat::from(35));
        assert_eq!(y.factor(2).coord_product(), Rat::from(6));
    }

    #[test]
    fn apply_s_involution() {
        let x = running_point();
        assert_eq!(apply_s(1, &apply_s(1, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn apply_word_empty_and_involution() {
        let x = running_point();
        assert_eq!(apply_word(&[], &x).unwrap(), x);
        assert_eq!(apply_word(&[1, 1], &x).unwrap(), x);
    }

    #[test]
    fn braid_relation_m3() {
        let x = ProductPoint::new(vec![fp(&[2, 3]), fp(&[5, 7]), fp(&[11, 13])]).unwrap();
        assert_eq!(
            apply_word(&[1, 2, 1], &x).unwrap(),
            apply_word(&[2, 1, 2], &x).unwrap()
        );
    }

    #[test]
    fn crystal_equivariance() {
        let x = ProductPoint::new(vec![fp(&[2, 3]), fp(&[5, 7]), fp(&[11, 13])]).unwrap();
        let c = Rat::new(5, 2);
        for k in 1..=2i64 {
            for j in 1..=2usize {
                let lhs = apply_s(j, &product_e(&x, k, &c).unwrap()).unwrap();
                let rhs = product_e(&apply_s(j, &x).unwrap(), k, &c).unwrap();
                assert_eq!(lhs, rhs);
                let s0 = product_stats(&x, k).unwrap();
                let s1 = product_stats(&apply_s(j, &x).unwrap(), k).unwrap();
                assert_eq!(s0.eps, s1.eps);
                assert_eq!(s0.phi, s1.phi);
            }
        }
    }

    #[test]
    fn orbit_size_is_m_factorial() {
        let x = ProductPoint::new(vec![fp(&[2, 3]), fp(&[5, 7]), fp(&[11, 13])]).unwrap();
        assert_eq!(orbit(&x).unwrap().len(), 6);
    }

    #[test]
    fn bad_transposition_index() {
        assert!(apply_s(2, &running_point()).is_err());
        assert!(apply_s(0, &running_point()).is_err());
    }
}
