//! The finite Weyl group `W`, the affine Weyl group `W_p = pZΦ ⋊ W`, and the
//! dot-action `w·λ = w(λ+ρ) − ρ`.
//!
//! Finite parts are integer matrices acting on fundamental-weight coordinates.
//! An affine element is stored as `λ ↦ Mλ + pγ` with the translation kept in
//! weight coordinates; `translation_part` recovers `γ` in root coordinates.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};

/// Upper bound on the size of finite groups enumerated by closure.
pub const GROUP_ENUMERATION_CAP: usize = 200_000;

pub(crate) type Mat = Vec<Vec<i64>>;

fn identity_mat(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn mat_vec(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// An element of the finite Weyl group, as its matrix on weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteElt {
    pub mat: Mat,
    inv: Mat,
}

impl FiniteElt {
    pub fn identity(rank: usize) -> Self {
        FiniteElt {
            mat: identity_mat(rank),
            inv: identity_mat(rank),
        }
    }

    /// The linear reflection `s_β` for the positive root with index `idx`.
    pub fn reflection(rs: &RootSystem, idx: usize) -> Self {
        let beta = rs.root_weight(idx);
        let co = &rs.positive_coroots[idx].coords;
        let n = rs.rank;
        let mat: Mat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i64::from(i == j) - beta.0[i] * co[j])
                    .collect()
            })
            .collect();
        FiniteElt {
            inv: mat.clone(),
            mat,
        }
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        Self::reflection(rs, rs.simple_root_index(i))
    }

    pub fn compose(&self, other: &FiniteElt) -> FiniteElt {
        FiniteElt {
            mat: mat_mul(&self.mat, &other.mat),
            inv: mat_mul(&other.inv, &self.inv),
        }
    }

    pub fn inverse(&self) -> FiniteElt {
        FiniteElt {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    pub fn apply(&self, lambda: &Weight) -> Weight {
        Weight(mat_vec(&self.mat, &lambda.0))
    }

    pub fn is_identity(&self) -> bool {
        self.mat == identity_mat(self.mat.len())
    }
}

/// An element `t_{pγ} ∘ w̄` of the affine Weyl group at a fixed `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElt {
    pub finite: FiniteElt,
    /// `pγ` in weight coordinates.
    pub shift: Vec<i64>,
    pub p: i64,
}

impl AffineElt {
    pub fn identity(rank: usize, p: i64) -> Self {
        AffineElt {
            finite: FiniteElt::identity(rank),
            shift: vec![0; rank],
            p,
        }
    }

    pub fn from_finite(finite: FiniteElt, p: i64) -> Self {
        let rank = finite.mat.len();
        AffineElt {
            finite,
            shift: vec![0; rank],
            p,
        }
    }

    /// The translation `t_{pγ}` for `γ` given in root coordinates.
    pub fn translation(rs: &RootSystem, gamma: &[i64], p: i64) -> Result<Self> {
        if gamma.len() != rs.rank {
            return Err(Error::DimensionMismatch {
                expected: rs.rank,
                got: gamma.len(),
            });
        }
        let shift = rs.weight_of_root_coords(gamma).scaled(p).0;
        Ok(AffineElt {
            finite: FiniteElt::identity(rs.rank),
            shift,
            p,
        })
    }

    pub fn rank(&self) -> usize {
        self.shift.len()
    }

    /// Linear (undotted) action.
    pub fn apply(&self, lambda: &Weight) -> Weight {
        let mut v = mat_vec(&self.finite.mat, &lambda.0);
        for (x, s) in v.iter_mut().zip(&self.shift) {
            *x += s;
        }
        Weight(v)
    }

    /// Dot-action `w(λ+ρ) − ρ`; assumes matching rank.
    pub fn dot(&self, lambda: &Weight) -> Weight {
        let shifted = Weight(lambda.0.iter().map(|x| x + 1).collect());
        let mut out = self.apply(&shifted);
        for x in out.0.iter_mut() {
            *x -= 1;
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineElt) -> AffineElt {
        let mut shift = mat_vec(&self.finite.mat, &other.shift);
        for (x, s) in shift.iter_mut().zip(&self.shift) {
            *x += s;
        }
        AffineElt {
            finite: self.finite.compose(&other.finite),
            shift,
            p: self.p,
        }
    }

    pub fn inverse(&self) -> AffineElt {
        let inv = self.finite.inverse();
        let shift = mat_vec(&inv.mat, &self.shift)
            .into_iter()
            .map(|x| -x)
            .collect();
        AffineElt {
            finite: inv,
            shift,
            p: self.p,
        }
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &AffineElt) -> AffineElt {
        self.compose(other).compose(&self.inverse())
    }

    /// `γ ∈ ZΦ` in root coordinates, where `self = t_{pγ} ∘ w̄`.
    pub fn translation_part(&self, rs: &RootSystem) -> Vec<i64> {
        let k = rs
            .root_coords(&Weight(self.shift.clone()))
            .expect("affine Weyl translations lie in the root lattice");
        k.into_iter()
            .map(|x| {
                debug_assert_eq!(x % self.p, 0);
                x / self.p
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.shift.iter().all(|&x| x == 0) && self.finite.is_identity()
    }
}

/// Dot-action with a rank check.
pub fn dot_action(w: &AffineElt, lambda: &Weight) -> Result<Weight> {
    if lambda.rank() != w.rank() {
        return Err(Error::DimensionMismatch {
            expected: w.rank(),
            got: lambda.rank(),
        });
    }
    Ok(w.dot(lambda))
}

/// `w ↦ w̄`, the image in the finite Weyl group (as an affine element with
/// zero translation).
pub fn finite_projection(w: &AffineElt) -> AffineElt {
    AffineElt::from_finite(w.finite.clone(), w.p)
}

/// The affine reflection `s_{β,np} = t_{npβ} ∘ s_β`, fixing the hyperplane
/// `<λ+ρ, β^vee> = np` under the dot-action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reflection {
    /// Index into `RootSystem::positive_roots`.
    pub root: usize,
    pub n: i64,
}

impl Reflection {
    pub fn to_elt(&self, rs: &RootSystem, p: i64) -> AffineElt {
        AffineElt {
            finite: FiniteElt::reflection(rs, self.root),
            shift: rs.root_weight(self.root).scaled(self.n * p).0,
            p,
        }
    }

    /// Recognises an affine element as a reflection `s_{β,np}`.
    pub fn from_elt(rs: &RootSystem, w: &AffineElt) -> Option<Reflection> {
        let root =
            (0..rs.num_positive_roots()).find(|&i| FiniteElt::reflection(rs, i) == w.finite)?;
        let beta = rs.root_weight(root);
        let (j, &b) = beta.0.iter().enumerate().find(|(_, &b)| b != 0)?;
        if w.shift[j] % (b * w.p) != 0 {
            return None;
        }
        let n = w.shift[j] / (b * w.p);
        (beta.scaled(n * w.p).0 == w.shift).then_some(Reflection { root, n })
    }

    /// Dot-action of the reflection without building the matrix.
    pub fn dot(&self, rs: &RootSystem, p: i64, lambda: &Weight) -> Weight {
        let c = rs.pair_rho(lambda, self.root) - self.n * p;
        let beta = rs.root_weight(self.root);
        Weight(
            lambda
                .0
                .iter()
                .zip(&beta.0)
                .map(|(x, b)| x - c * b)
                .collect(),
        )
    }

    /// `(k, j)` word syntax: affine constant `np` then 1-based root index.
    pub fn word_token(&self, p: i64) -> String {
        format!("{}:{}", self.n * p, self.root + 1)
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s[{},{}]", self.root + 1, self.n)
    }
}

/// Builds `s_{β,np}` for the positive root with index `root`.
pub fn reflection_elt(rs: &RootSystem, root: usize, n: i64, p: i64) -> Result<AffineElt> {
    if root >= rs.num_positive_roots() {
        return Err(Error::NotAPositiveRoot(root));
    }
    Ok(Reflection { root, n }.to_elt(rs, p))
}

/// Same as [`reflection_elt`] with `β` given in simple-root coordinates.
pub fn reflection_elt_for_root(rs: &RootSystem, beta: &[i64], n: i64, p: i64) -> Result<AffineElt> {
    let idx = rs
        .root_index(beta)
        .ok_or(Error::NotAPositiveRoot(usize::MAX))?;
    reflection_elt(rs, idx, n, p)
}

pub fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks the standing assumption `p >= h` and that `p` is prime.
pub fn check_p(rs: &RootSystem, p: i64) -> Result<()> {
    if p < rs.coxeter_number {
        return Err(Error::PTooSmall {
            p,
            h: rs.coxeter_number,
        });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// The simple reflections `S_p`: reflections in the walls of the fundamental
/// alcove. Per component: the simple walls `<·+ρ, α_i^vee> = 0` in index
/// order, then the affine wall through the highest coroot at level `p`.
pub fn simple_reflections_sp(rs: &RootSystem, p: i64) -> Result<Vec<Reflection>> {
    check_p(rs, p)?;
    let mut out: Vec<Reflection> = (0..rs.rank)
        .map(|i| Reflection {
            root: rs.simple_root_index(i),
            n: 0,
        })
        .collect();
    for c in 0..rs.components.len() {
        let top = (0..rs.num_positive_roots())
            .filter(|&idx| rs.root_component(idx) == c)
            .max_by_key(|&idx| (rs.pair(&rs.rho(), idx), std::cmp::Reverse(idx)))
            .expect("every component has a root");
        out.push(Reflection { root: top, n: 1 });
    }
    Ok(out)
}

/// Closure of a generating set under composition; errors past `cap`.
pub fn generate_group(rank: usize, gens: &[FiniteElt], cap: usize) -> Result<Vec<FiniteElt>> {
    let id = FiniteElt::identity(rank);
    let mut seen: HashSet<FiniteElt> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::BoundExceeded(format!(
                        "group closure exceeds {cap} elements"
                    )));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

/// Longest element of the parabolic subgroup `W_I`.
pub fn longest_element(rs: &RootSystem, levi: &[usize]) -> FiniteElt {
    let mut w = FiniteElt::identity(rs.rank);
    // w is longest iff w(α_i) < 0 for every i in I.
    loop {
        let next = levi.iter().find(|&&i| {
            let img = w.apply(rs.root_weight(rs.simple_root_index(i)));
            let k = rs.root_coords(&img).expect("roots map to roots");
            k.iter().all(|&x| x >= 0)
        });
        match next {
            Some(&i) => w = w.compose(&FiniteElt::simple_reflection(rs, i)),
            None => return w,
        }
    }
}

/// `λ ↦ −w_I(λ)`.
pub fn tau_weight(rs: &RootSystem, lambda: &Weight, levi: &[usize]) -> Result<Weight> {
    rs.check_rank(lambda)?;
    Ok(-&longest_element(rs, levi).apply(lambda))
}

/// Parses the element syntax `s[j,n]`, `t[g1,..,gr]`, `e`, joined by `*`
/// (composition, leftmost factor applied last).
pub fn parse_element(rs: &RootSystem, p: i64, text: &str) -> Result<AffineElt> {
    let mut acc = AffineElt::identity(rs.rank, p);
    for factor in text.split('*') {
        let f = factor.trim();
        let elt = if f == "e" || f == "1" {
            AffineElt::identity(rs.rank, p)
        } else {
            let (head, body) = f
                .split_once('[')
                .ok_or_else(|| Error::Parse(format!("bad element factor {f:?}")))?;
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("missing ']' in {f:?}")))?;
            let nums = body
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            match head.trim() {
                "s" => {
                    if nums.len() != 2 || nums[0] < 1 {
                        return Err(Error::Parse(format!("expected s[root_index,n], got {f:?}")));
                    }
                    reflection_elt(rs, (nums[0] - 1) as usize, nums[1], p)?
                }
                "t" => AffineElt::translation(rs, &nums, p)?,
                other => return Err(Error::Parse(format!("unknown generator {other:?}"))),
            }
        };
        acc = acc.compose(&elt);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a1() -> RootSystem {
        RootSystem::from_spec("A1").unwrap()
    }

    #[test]
    fn dot_action_examples() {
        let rs = a1();
        let id = AffineElt::identity(1, 5);
        let lam = Weight(vec![3]);
        assert_eq!(dot_action(&id, &lam).unwrap(), lam);
        let s = reflection_elt(&rs, 0, 0, 5).unwrap();
        assert_eq!(s.dot(&Weight(vec![0])), Weight(vec![-2]));
        let s5 = reflection_elt(&rs, 0, 1, 5).unwrap();
        assert_eq!(s5.dot(&Weight(vec![0])), Weight(vec![8]));
        assert!(dot_action(&id, &Weight(vec![1, 2])).is_err());
    }

    #[test]
    fn reflections_fix_their_hyperplanes() {
        let rs = a1();
        let s0 = reflection_elt(&rs, 0, 0, 5).unwrap();
        assert_eq!(s0.dot(&Weight(vec![-1])), Weight(vec![-1]));
        let s5 = reflection_elt(&rs, 0, 1, 5).unwrap();
        assert_eq!(s5.dot(&Weight(vec![4])), Weight(vec![4]));
        assert!(s5.compose(&s5).is_identity());
        assert_eq!(
            reflection_elt(&rs, 3, 0, 5),
            Err(Error::NotAPositiveRoot(3))
        );
    }

    #[test]
    fn reflection_fast_path_matches_matrix() {
        let rs = RootSystem::from_spec("G2").unwrap();
        for idx in 0..rs.num_positive_roots() {
            for n in -2..=2 {
                let r = Reflection { root: idx, n };
                let e = r.to_elt(&rs, 7);
                for x in -4..4 {
                    for y in -4..4 {
                        let w = Weight(vec![x, y]);
                        assert_eq!(r.dot(&rs, 7, &w), e.dot(&w));
                    }
                }
            }
        }
    }

    #[test]
    fn finite_projection_examples() {
        let rs = a1();
        let t = AffineElt::translation(&rs, &[1], 5).unwrap();
        assert!(finite_projection(&t).is_identity());
        let s = reflection_elt(&rs, 0, 3, 5).unwrap();
        assert_eq!(finite_projection(&s), reflection_elt(&rs, 0, 0, 5).unwrap());
        assert!(finite_projection(&AffineElt::identity(1, 5)).is_identity());
        assert_eq!(s.translation_part(&rs), vec![3]);
    }

    #[test]
    fn simple_reflection_sets() {
        let rs = a1();
        let sp = simple_reflections_sp(&rs, 5).unwrap();
        assert_eq!(
            sp,
            vec![Reflection { root: 0, n: 0 }, Reflection { root: 0, n: 1 }]
        );
        let a2 = RootSystem::from_spec("A2").unwrap();
        assert_eq!(simple_reflections_sp(&a2, 5).unwrap().len(), 3);
        assert_eq!(
            simple_reflections_sp(&rs, 1),
            Err(Error::PTooSmall { p: 1, h: 2 })
        );
        let red = RootSystem::from_spec("A2xA1").unwrap();
        assert_eq!(simple_reflections_sp(&red, 5).unwrap().len(), 5);
        let g2 = RootSystem::from_spec("G2").unwrap();
        let sp = simple_reflections_sp(&g2, 7).unwrap();
        // the affine wall passes through the highest coroot: <ρ, θ^vee> = h - 1
        assert_eq!(g2.pair(&g2.rho(), sp[2].root), 5);
    }

    #[test]
    fn tau_examples() {
        let rs = a1();
        assert_eq!(
            tau_weight(&rs, &Weight(vec![3]), &[]).unwrap(),
            Weight(vec![-3])
        );
        assert_eq!(
            tau_weight(&rs, &Weight(vec![1]), &[0]).unwrap(),
            Weight(vec![1])
        );
        let b2 = RootSystem::from_spec("B2").unwrap();
        for lam in [Weight(vec![2, -1]), Weight(vec![0, 5])] {
            for levi in [vec![], vec![0], vec![1], vec![0, 1]] {
                let once = tau_weight(&b2, &lam, &levi).unwrap();
                assert_eq!(tau_weight(&b2, &once, &levi).unwrap(), lam);
            }
        }
    }

    #[test]
    fn longest_element_has_expected_order() {
        let a3 = RootSystem::from_spec("A3").unwrap();
        let gens: Vec<_> = (0..3)
            .map(|i| FiniteElt::simple_reflection(&a3, i))
            .collect();
        assert_eq!(generate_group(3, &gens, 1000).unwrap().len(), 24);
        let w0 = longest_element(&a3, &[0, 1, 2]);
        // w0 sends ρ to −ρ
        assert_eq!(w0.apply(&a3.rho()), -&a3.rho());
        let g2 = RootSystem::from_spec("G2").unwrap();
        let gens: Vec<_> = (0..2)
            .map(|i| FiniteElt::simple_reflection(&g2, i))
            .collect();
        assert_eq!(generate_group(2, &gens, 1000).unwrap().len(), 12);
        assert!(generate_group(
            3,
            &[
                FiniteElt::simple_reflection(&a3, 0),
                FiniteElt::simple_reflection(&a3, 1),
                FiniteElt::simple_reflection(&a3, 2)
            ],
            10
        )
        .is_err());
    }

    #[test]
    fn element_syntax() {
        let rs = a1();
        let w = parse_element(&rs, 5, "s[1,1]*t[1]").unwrap();
        let expected = reflection_elt(&rs, 0, 1, 5)
            .unwrap()
            .compose(&AffineElt::translation(&rs, &[1], 5).unwrap());
        assert_eq!(w, expected);
        assert!(parse_element(&rs, 5, "e").unwrap().is_identity());
        assert!(parse_element(&rs, 5, "q[1]").is_err());
        assert!(parse_element(&rs, 5, "s[2,0]").is_err());
    }

    fn arb_elt(rs: RootSystem, p: i64) -> impl Strategy<Value = AffineElt> {
        let nroots = rs.num_positive_roots();
        prop::collection::vec((0..nroots, -2i64..=2), 0..6).prop_map(move |gens| {
            gens.into_iter()
                .fold(AffineElt::identity(rs.rank, p), |acc, (r, n)| {
                    acc.compose(&Reflection { root: r, n }.to_elt(&rs, p))
                })
        })
    }

    proptest! {
        #[test]
        fn group_axioms_and_action(
            w in arb_elt(RootSystem::from_spec("B2").unwrap(), 5),
            v in arb_elt(RootSystem::from_spec("B2").unwrap(), 5),
            u in arb_elt(RootSystem::from_spec("B2").unwrap(), 5),
            x in -10i64..10, y in -10i64..10,
        ) {
            let rs = RootSystem::from_spec("B2").unwrap();
            let lam = Weight(vec![x, y]);
            prop_assert_eq!(w.compose(&v).compose(&u), w.compose(&v.compose(&u)));
            prop_assert!(w.compose(&w.inverse()).is_identity());
            prop_assert!(w.inverse().compose(&w).is_identity());
            prop_assert_eq!(w.compose(&v).dot(&lam), w.dot(&v.dot(&lam)));
            prop_assert_eq!(
                finite_projection(&w.compose(&v)),
                finite_projection(&w).compose(&finite_projection(&v))
            );
            // translations stay in pZΦ
            let gamma = w.translation_part(&rs);
            let back = AffineElt::translation(&rs, &gamma, 5).unwrap().compose(&finite_projection(&w));
            prop_assert_eq!(back, w);
        }
    }
}
