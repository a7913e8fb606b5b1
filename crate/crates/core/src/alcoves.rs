//! Alcove coordinates, the d-function, walls, and the `↑` order.

use std::collections::{HashSet, VecDeque};

use crate::affine_weyl::{check_p, simple_reflections_sp, AffineElt, Reflection};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};

/// `n_α` for every positive root (indexed like `positive_roots`), with
/// `n_α p < <ν+ρ, α^vee> < (n_α+1) p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlcoveCoords {
    pub n: Vec<i64>,
    pub d: i64,
}

impl AlcoveCoords {
    /// Number of hyperplanes separating two alcoves.
    pub fn distance(&self, other: &AlcoveCoords) -> i64 {
        self.n
            .iter()
            .zip(&other.n)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WallSide {
    /// Reflecting across the wall lowers `d` by one.
    Lower,
    /// Reflecting across the wall raises `d` by one.
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WallDatum {
    pub root: usize,
    pub n: i64,
    pub side: WallSide,
}

impl WallDatum {
    pub fn reflection(&self) -> Reflection {
        Reflection {
            root: self.root,
            n: self.n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Below,
    Above,
}

pub fn is_regular(rs: &RootSystem, nu: &Weight, p: i64) -> bool {
    (0..rs.num_positive_roots()).all(|i| rs.pair_rho(nu, i).rem_euclid(p) != 0)
}

pub fn alcove_coords(rs: &RootSystem, nu: &Weight, p: i64) -> Result<AlcoveCoords> {
    rs.check_rank(nu)?;
    let mut n = Vec::with_capacity(rs.num_positive_roots());
    for i in 0..rs.num_positive_roots() {
        let v = rs.pair_rho(nu, i);
        if v.rem_euclid(p) == 0 {
            return Err(Error::WallPoint(nu.clone()));
        }
        n.push(v.div_euclid(p));
    }
    let d = n.iter().sum();
    Ok(AlcoveCoords { n, d })
}

pub fn d_value(rs: &RootSystem, nu: &Weight, p: i64) -> Result<i64> {
    Ok(alcove_coords(rs, nu, p)?.d)
}

/// The walls of the alcove containing the regular weight `ν`. A candidate
/// hyperplane is a wall exactly when reflecting `ν` across it reaches an
/// alcove at distance one.
pub fn walls_of_alcove(rs: &RootSystem, nu: &Weight, p: i64) -> Result<Vec<WallDatum>> {
    let here = alcove_coords(rs, nu, p)?;
    let mut walls = Vec::new();
    for (root, &n_alpha) in here.n.iter().enumerate() {
        for (n, side) in [(n_alpha, WallSide::Lower), (n_alpha + 1, WallSide::Upper)] {
            let image = Reflection { root, n }.dot(rs, p, nu);
            let there = alcove_coords(rs, &image, p)?;
            if here.distance(&there) == 1 {
                walls.push(WallDatum { root, n, side });
            }
        }
    }
    Ok(walls)
}

pub fn is_dominant(rs: &RootSystem, nu: &Weight) -> bool {
    (0..rs.num_positive_roots()).all(|i| rs.pair_rho(nu, i) >= 0)
}

/// Decides `t·ν ≺ ν` for a single reflection by comparing `d`.
pub fn single_reflection_compare(
    rs: &RootSystem,
    t: &Reflection,
    nu: &Weight,
    p: i64,
) -> Result<Relation> {
    let image = t.dot(rs, p, nu);
    if &image == nu {
        return Err(Error::FixedPoint(nu.clone()));
    }
    let before = d_value(rs, nu, p)?;
    let after = d_value(rs, &image, p)?;
    Ok(if after < before {
        Relation::Below
    } else {
        Relation::Above
    })
}

/// Decides `μ ↑ λ`.
///
/// Breadth-first search downward from `λ` through generating steps
/// `s_{β,mp}·x` with `<x+ρ, β^vee> ≥ mp`. Every element of a chain from `μ`
/// to `λ` lies in the root-order interval `[μ, λ]`, so the search is
/// confined to that finite box.
pub fn uparrow_leq(rs: &RootSystem, mu: &Weight, lambda: &Weight, p: i64) -> bool {
    if mu == lambda {
        return true;
    }
    let Some(gap) = rs.root_coords(&(lambda - mu)) else {
        return false;
    };
    if gap.iter().any(|&x| x < 0) {
        return false;
    }
    let roots: Vec<&[i64]> = rs
        .positive_roots
        .iter()
        .map(|r| r.coords.as_slice())
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(gap.clone());
    queue.push_back((lambda.clone(), gap));
    while let Some((x, k)) = queue.pop_front() {
        for (idx, beta) in roots.iter().enumerate() {
            let v = rs.pair_rho(&x, idx);
            let mut c = v.rem_euclid(p);
            if c == 0 {
                c = p;
            }
            loop {
                let next: Vec<i64> = k.iter().zip(beta.iter()).map(|(a, b)| a - c * b).collect();
                if next.iter().any(|&a| a < 0) {
                    break;
                }
                if next.iter().all(|&a| a == 0) {
                    return true;
                }
                if seen.insert(next.clone()) {
                    let bw = rs.root_weight(idx);
                    let y = Weight(x.0.iter().zip(&bw.0).map(|(a, b)| a - c * b).collect());
                    queue.push_back((y, next));
                }
                c += p;
            }
        }
    }
    false
}

/// Strict version of [`uparrow_leq`].
pub fn uparrow_lt(rs: &RootSystem, mu: &Weight, lambda: &Weight, p: i64) -> bool {
    mu != lambda && uparrow_leq(rs, mu, lambda, p)
}

/// Affine reflections whose hyperplanes pass through `ν`.
pub fn hyperplanes_through(rs: &RootSystem, nu: &Weight, p: i64) -> Vec<Reflection> {
    (0..rs.num_positive_roots())
        .filter_map(|root| {
            let v = rs.pair_rho(nu, root);
            (v.rem_euclid(p) == 0).then_some(Reflection { root, n: v / p })
        })
        .collect()
}

/// Folds `ν` into the closed fundamental alcove by reflecting across violated
/// walls of `C`. Returns `(w, x)` with `x ∈ C̄` and `w·x = ν`.
pub fn fold_to_closure(rs: &RootSystem, nu: &Weight, p: i64) -> Result<(AffineElt, Weight)> {
    check_p(rs, p)?;
    rs.check_rank(nu)?;
    let walls = simple_reflections_sp(rs, p)?;
    Ok(fold_with_walls(rs, &walls, nu, p))
}

pub(crate) fn fold_with_walls(
    rs: &RootSystem,
    walls: &[Reflection],
    nu: &Weight,
    p: i64,
) -> (AffineElt, Weight) {
    let mut w = AffineElt::identity(rs.rank, p);
    let mut x = nu.clone();
    loop {
        let violated = walls.iter().find(|r| {
            let v = rs.pair_rho(&x, r.root);
            if r.n == 0 {
                v < 0
            } else {
                v > r.n * p
            }
        });
        match violated {
            Some(r) => {
                x = r.dot(rs, p, &x);
                w = w.compose(&r.to_elt(rs, p));
            }
            None => return (w, x),
        }
    }
}

/// True when `ν` lies in the closed fundamental alcove.
pub fn in_closed_fundamental_alcove(rs: &RootSystem, nu: &Weight, p: i64) -> bool {
    (0..rs.num_positive_roots()).all(|i| {
        let v = rs.pair_rho(nu, i);
        (0..=p).contains(&v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::{reflection_elt, simple_reflections_sp};

    fn a1() -> RootSystem {
        RootSystem::from_spec("A1").unwrap()
    }
    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn alcove_coordinate_examples() {
        let rs = a1();
        assert_eq!(
            alcove_coords(&rs, &w(&[0]), 5).unwrap(),
            AlcoveCoords { n: vec![0], d: 0 }
        );
        assert_eq!(
            alcove_coords(&rs, &w(&[8]), 5).unwrap(),
            AlcoveCoords { n: vec![1], d: 1 }
        );
        assert_eq!(
            alcove_coords(&rs, &w(&[4]), 5),
            Err(Error::WallPoint(w(&[4])))
        );
        assert_eq!(d_value(&rs, &w(&[-2]), 5).unwrap(), -1);
    }

    #[test]
    fn single_reflection_examples() {
        let rs = a1();
        let s0 = Reflection { root: 0, n: 0 };
        let s5 = Reflection { root: 0, n: 1 };
        assert_eq!(
            single_reflection_compare(&rs, &s5, &w(&[8]), 5).unwrap(),
            Relation::Below
        );
        assert_eq!(
            single_reflection_compare(&rs, &s0, &w(&[0]), 5).unwrap(),
            Relation::Below
        );
        assert_eq!(
            single_reflection_compare(&rs, &s5, &w(&[0]), 5).unwrap(),
            Relation::Above
        );
        assert_eq!(
            single_reflection_compare(&rs, &s5, &w(&[4]), 5),
            Err(Error::FixedPoint(w(&[4])))
        );
    }

    #[test]
    fn uparrow_examples() {
        let rs = a1();
        assert!(uparrow_leq(&rs, &w(&[3]), &w(&[3]), 5));
        assert!(uparrow_leq(&rs, &w(&[-2]), &w(&[0]), 5));
        assert!(!uparrow_leq(&rs, &w(&[8]), &w(&[0]), 5));
        assert!(uparrow_leq(&rs, &w(&[0]), &w(&[8]), 5));
        assert!(!uparrow_leq(&rs, &w(&[1]), &w(&[0]), 5));
        // a chain of two steps: -10 ↑ -2 ↑ 0
        assert!(uparrow_leq(&rs, &w(&[-10]), &w(&[0]), 5));
    }

    #[test]
    fn wall_examples() {
        let rs = a1();
        let at = |v: i64| {
            walls_of_alcove(&rs, &w(&[v]), 5)
                .unwrap()
                .into_iter()
                .map(|d| (d.root, d.n))
                .collect::<Vec<_>>()
        };
        assert_eq!(at(0), vec![(0, 0), (0, 1)]);
        assert_eq!(at(8), vec![(0, 1), (0, 2)]);
        let a2 = RootSystem::from_spec("A2").unwrap();
        assert_eq!(walls_of_alcove(&a2, &w(&[0, 0]), 5).unwrap().len(), 3);
        let red = RootSystem::from_spec("A2xA1").unwrap();
        assert_eq!(walls_of_alcove(&red, &w(&[0, 0, 0]), 5).unwrap().len(), 5);
        assert!(walls_of_alcove(&rs, &w(&[4]), 5).is_err());
    }

    #[test]
    fn simple_reflections_are_the_walls_of_c() {
        for (spec, p) in [
            ("A1", 5),
            ("A2", 5),
            ("B2", 7),
            ("G2", 7),
            ("A3", 5),
            ("A2xA1", 5),
        ] {
            let rs = RootSystem::from_spec(spec).unwrap();
            let mut sp = simple_reflections_sp(&rs, p).unwrap();
            let mut walls: Vec<_> = walls_of_alcove(&rs, &rs.zero(), p)
                .unwrap()
                .into_iter()
                .map(|d| d.reflection())
                .collect();
            sp.sort();
            walls.sort();
            assert_eq!(sp, walls, "{spec}");
        }
    }

    #[test]
    fn dominance_examples() {
        let rs = a1();
        assert!(is_dominant(&rs, &w(&[0])));
        assert!(!is_dominant(&rs, &w(&[-2])));
        assert!(is_dominant(&rs, &w(&[-1])));
    }

    #[test]
    fn folding_recovers_the_element() {
        let rs = RootSystem::from_spec("B2").unwrap();
        for x in -15..15 {
            for y in -15..15 {
                let nu = w(&[x, y]);
                let (el, base) = fold_to_closure(&rs, &nu, 5).unwrap();
                assert!(in_closed_fundamental_alcove(&rs, &base, 5));
                assert_eq!(el.dot(&base), nu);
            }
        }
    }

    #[test]
    fn wall_reflections_change_d_by_one() {
        let rs = RootSystem::from_spec("A2").unwrap();
        let nu = w(&[7, 3]);
        for wall in walls_of_alcove(&rs, &nu, 5).unwrap() {
            let img = reflection_elt(&rs, wall.root, wall.n, 5).unwrap().dot(&nu);
            let delta = d_value(&rs, &img, 5).unwrap() - d_value(&rs, &nu, 5).unwrap();
            match wall.side {
                WallSide::Lower => assert_eq!(delta, -1),
                WallSide::Upper => assert_eq!(delta, 1),
            }
        }
    }
}
