//! Matrix words `M(a_n)...M(a_1)`, continuants, the splice sum, dihedral
//! canonical forms and the zero/unit collapse rewrites.

use std::ops::Add;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::matrix::{Mat2, Sign};
use crate::ring::{Ring, RingElem};

/// Default cap on the tuple length accepted by [`continuant_euler`]; the
/// number of terms grows like the Fibonacci numbers.
pub const EULER_SIZE_LIMIT: usize = 20;

pub fn common_ring(tuple: &[RingElem]) -> Result<Ring> {
    let mut ring = Ring::Integers;
    for x in tuple {
        ring = ring
            .join(x.ring())
            .ok_or_else(|| Error::MixedRing(ring.to_string(), x.ring().to_string()))?;
    }
    Ok(ring)
}

/// `M(a_n) * ... * M(a_1)`, with `a_n` leftmost.
pub fn product_matrix(tuple: &[RingElem]) -> Result<Mat2> {
    if tuple.is_empty() {
        return Err(Error::SizeTooSmall { size: 0, min: 1 });
    }
    common_ring(tuple)?;
    Ok(product_unchecked(tuple))
}

pub(crate) fn product_unchecked(tuple: &[RingElem]) -> Mat2 {
    tuple
        .iter()
        .fold(Mat2::identity(), |acc, a| acc.left_factor(a))
}

/// `K_n(a_1, ..., a_n)` by the recurrence `K_j = a_j K_{j-1} - K_{j-2}`,
/// `K_{-1} = 0`, `K_0 = 1`.
pub fn continuant(tuple: &[RingElem]) -> Result<RingElem> {
    common_ring(tuple)?;
    Ok(continuant_unchecked(tuple))
}

fn continuant_unchecked(tuple: &[RingElem]) -> RingElem {
    let mut prev = RingElem::zero();
    let mut cur = RingElem::one();
    for a in tuple {
        let next = &(a * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `K_n` by Euler's rule: the signed sum of all products left after
/// deleting disjoint pairs of consecutive entries, each deleted pair
/// contributing a factor `-1`.
pub fn continuant_euler(tuple: &[RingElem]) -> Result<RingElem> {
    continuant_euler_with_limit(tuple, EULER_SIZE_LIMIT)
}

pub fn continuant_euler_with_limit(tuple: &[RingElem], limit: usize) -> Result<RingElem> {
    if tuple.len() > limit {
        return Err(Error::SizeLimit {
            size: tuple.len(),
            max: limit,
        });
    }
    common_ring(tuple)?;
    let mut total = RingElem::zero();
    euler_terms(tuple, RingElem::one(), &mut total);
    Ok(total)
}

// Walks every choice of deleted pairs; `acc` carries the signed product of
// the entries kept so far.
fn euler_terms(rest: &[RingElem], acc: RingElem, total: &mut RingElem) {
    match rest {
        [] => *total = &*total + &acc,
        [a] => *total = &*total + &(&acc * a),
        [a, tail @ ..] => {
            euler_terms(tail, &acc * a, total);
            euler_terms(&tail[1..], -acc, total);
        }
    }
}

/// The product matrix rebuilt from four continuants:
/// `[[K_n(a_1..a_n), -K_{n-1}(a_2..a_n)], [K_{n-1}(a_1..a_{n-1}), -K_{n-2}(a_2..a_{n-1})]]`.
pub fn matrix_from_continuants(tuple: &[RingElem]) -> Result<Mat2> {
    let n = tuple.len();
    if n == 0 {
        return Err(Error::SizeTooSmall { size: 0, min: 1 });
    }
    common_ring(tuple)?;
    let inner = if n >= 2 {
        continuant_unchecked(&tuple[1..n - 1])
    } else {
        RingElem::zero()
    };
    Ok(Mat2::new(
        continuant_unchecked(tuple),
        -continuant_unchecked(&tuple[1..]),
        continuant_unchecked(&tuple[..n - 1]),
        -inner,
    ))
}

/// `Some(e)` when `M_n(tuple) = e*Id`. Size 1 never qualifies.
pub fn is_quiddity(tuple: &[RingElem]) -> Result<Option<Sign>> {
    if tuple.is_empty() {
        return Ok(None);
    }
    Ok(product_matrix(tuple)?.sign_of_identity())
}

/// The splice sum `(a_1 + b_l, a_2, ..., a_{m-1}, a_m + b_1, b_2, ..., b_{l-1})`.
pub fn sum_oplus<T>(a: &[T], b: &[T]) -> Result<Vec<T>>
where
    T: Clone + Add<Output = T>,
{
    for part in [a, b] {
        if part.len() < 2 {
            return Err(Error::SizeTooSmall {
                size: part.len(),
                min: 2,
            });
        }
    }
    let (m, l) = (a.len(), b.len());
    let mut out = Vec::with_capacity(m + l - 2);
    out.push(a[0].clone() + b[l - 1].clone());
    out.extend_from_slice(&a[1..m - 1]);
    out.push(a[m - 1].clone() + b[0].clone());
    out.extend_from_slice(&b[1..l - 1]);
    Ok(out)
}

/// [`sum_oplus`] on ring elements, rejecting mixed rings.
pub fn sum_oplus_elems(a: &[RingElem], b: &[RingElem]) -> Result<Vec<RingElem>> {
    let (ra, rb) = (common_ring(a)?, common_ring(b)?);
    if ra.join(rb).is_none() {
        return Err(Error::MixedRing(ra.to_string(), rb.to_string()));
    }
    sum_oplus(a, b)
}

/// The tuple read from position `rotation`, optionally backwards:
/// `rep[i] = q[(rotation + i) % n]`, then reversed if asked.
pub fn dihedral_representative<T: Clone>(q: &[T], rotation: usize, reversed: bool) -> Vec<T> {
    let n = q.len();
    let mut out: Vec<T> = (0..n).map(|i| q[(rotation + i) % n].clone()).collect();
    if reversed {
        out.reverse();
    }
    out
}

/// All `2n` dihedral images in scan order: rotation index, then reversal.
pub fn dihedral_orbit<T: Clone>(q: &[T]) -> impl Iterator<Item = (usize, bool, Vec<T>)> + '_ {
    (0..q.len()).flat_map(move |r| {
        [false, true]
            .into_iter()
            .map(move |rev| (r, rev, dihedral_representative(q, r, rev)))
    })
}

/// The lexicographically least tuple among all rotations of `q` and of its
/// reversal.
pub fn canonical_form<T: Ord + Clone>(q: &[T]) -> Vec<T> {
    let n = q.len();
    if n == 0 {
        return Vec::new();
    }
    // element i of the image starting at `start`, read forwards or backwards
    let read = |start: usize, forward: bool, i: usize| -> &T {
        if forward {
            &q[(start + i) % n]
        } else {
            &q[(start + n - i % n) % n]
        }
    };
    let mut best = (0usize, true);
    for start in 0..n {
        for forward in [true, false] {
            let better = (0..n)
                .map(|i| read(start, forward, i).cmp(read(best.0, best.1, i)))
                .find(|o| o.is_ne())
                .is_some_and(|o| o.is_lt());
            if better {
                best = (start, forward);
            }
        }
    }
    (0..n).map(|i| read(best.0, best.1, i).clone()).collect()
}

/// Collapses the window `(q[j-1], q[j], q[j+1])` (indices cyclic) into the
/// single entry `f(q[j-1], q[j+1])`, keeping the remaining entries in cyclic
/// order and starting the output at the collapsed entry when the window wraps.
fn collapse<T: Clone>(q: &[T], j: usize, merged: impl Fn(&T, &T) -> T) -> Vec<T> {
    let n = q.len();
    if j >= 1 && j + 1 < n {
        let mut out = Vec::with_capacity(n - 2);
        out.extend_from_slice(&q[..j - 1]);
        out.push(merged(&q[j - 1], &q[j + 1]));
        out.extend_from_slice(&q[j + 2..]);
        out
    } else {
        let (left, right) = ((j + n - 1) % n, (j + 1) % n);
        let mut out = vec![merged(&q[left], &q[right])];
        out.extend((2..n - 1).map(|i| q[(j + i) % n].clone()));
        out
    }
}

/// A verified λ-quiddity over a cyclic subgroup, stored by its integer
/// coefficients `k_1..k_n` (entries `a_j = k_j * w`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiddity {
    gen: Generator,
    coeffs: Vec<i64>,
    sign: Sign,
}

impl Quiddity {
    /// Verifies the coefficients and records the sign.
    pub fn new(gen: Generator, coeffs: Vec<i64>) -> Result<Quiddity> {
        if gen.is_nonneg() && coeffs.iter().any(|&c| c < 0) {
            return Err(Error::NotInSubgroup(gen.to_string()));
        }
        match quiddity_sign(&gen, &coeffs) {
            Some(sign) => Ok(Quiddity { gen, coeffs, sign }),
            None => Err(Error::NotAQuiddity),
        }
    }

    pub(crate) fn from_verified(gen: Generator, coeffs: Vec<i64>, sign: Sign) -> Quiddity {
        debug_assert_eq!(quiddity_sign(&gen, &coeffs), Some(sign));
        Quiddity { gen, coeffs, sign }
    }

    pub fn generator(&self) -> &Generator {
        &self.gen
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn elements(&self) -> Vec<RingElem> {
        self.gen.elements(&self.coeffs)
    }

    pub fn canonical(&self) -> Vec<i64> {
        canonical_form(&self.coeffs)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == self.coeffs
    }

    /// Re-checks `M_n = e*Id` from scratch.
    pub fn reverify(&self) -> bool {
        quiddity_sign(&self.gen, &self.coeffs) == Some(self.sign)
    }

    pub fn negate(&self) -> Result<Quiddity> {
        Quiddity::new(self.gen, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// `is_quiddity` on a coefficient tuple over a generator.
pub fn quiddity_sign(gen: &Generator, coeffs: &[i64]) -> Option<Sign> {
    if coeffs.is_empty() {
        return None;
    }
    product_unchecked(&gen.elements(coeffs)).sign_of_identity()
}

/// Removes the zero at index `j` (0-based) with `(.., a, 0, b, ..) -> (.., a+b, ..)`;
/// the result is a quiddity of size `n-2` with the opposite sign.
pub fn reduce_zero(q: &Quiddity, j: usize) -> Result<Quiddity> {
    let n = q.len();
    if n < 4 {
        return Err(Error::SizeTooSmall { size: n, min: 4 });
    }
    if q.coeffs.get(j) != Some(&0) {
        return Err(Error::NotZeroAt(j));
    }
    let coeffs = collapse(&q.coeffs, j, |a, b| a + b);
    let out = Quiddity::new(q.gen, coeffs)?;
    if out.sign != q.sign.flip() {
        return Err(Error::TheoremViolated(
            "M(a)M(0)M(b) = -M(a+b) did not flip the sign".into(),
        ));
    }
    Ok(out)
}

/// Removes a unit entry at index `j` (0-based) using
/// `M_3(a,1,b) = M_2(a-1,b-1)` and `M_3(a,-1,b) = -M_2(a+1,b+1)`.
/// Returns the shorter tuple and whether the sign of the product flipped.
/// The output is over the ambient ring and may leave the subgroup.
pub fn reduce_unit(tuple: &[RingElem], j: usize) -> Result<(Vec<RingElem>, bool)> {
    let n = tuple.len();
    if n < 3 {
        return Err(Error::SizeTooSmall { size: n, min: 3 });
    }
    common_ring(tuple)?;
    let entry = tuple.get(j).ok_or(Error::NotUnitAt(j))?;
    let (shift, flipped) = if entry.is_one() {
        (RingElem::int(-1), false)
    } else if entry.is_minus_one() {
        (RingElem::one(), true)
    } else {
        return Err(Error::NotUnitAt(j));
    };
    // the two neighbors are shifted separately, then the middle dropped
    let mut shifted = tuple.to_vec();
    let (left, right) = ((j + n - 1) % n, (j + 1) % n);
    shifted[left] = &shifted[left] + &shift;
    shifted[right] = &shifted[right] + &shift;
    let out = if j >= 1 && j + 1 < n {
        let mut v = shifted[..j].to_vec();
        v.extend_from_slice(&shifted[j + 1..]);
        v
    } else {
        (1..n).map(|i| shifted[(j + i) % n].clone()).collect()
    };
    Ok((out, flipped))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<RingElem> {
        v.iter().map(|&x| RingElem::int(x)).collect()
    }

    fn sym(name: &str) -> RingElem {
        // distinct "variables" as powers of X so polynomial identities are exact
        match name {
            "a1" => RingElem::poly(vec![3.into(), 1.into()]),
            "a2" => RingElem::poly(vec![(-2).into(), 0.into(), 1.into()]),
            "a3" => RingElem::poly(vec![5.into(), 0.into(), 0.into(), 2.into()]),
            "a4" => RingElem::poly(vec![1.into(), (-1).into(), 0.into(), 0.into(), 1.into()]),
            _ => unreachable!(),
        }
    }

    #[test]
    fn small_products() {
        let neg_id = Mat2::identity().scale(Sign::Minus);
        assert_eq!(product_matrix(&ints(&[0, 0])).unwrap(), neg_id);
        assert_eq!(product_matrix(&ints(&[1, 1, 1])).unwrap(), neg_id);
        let p = product_matrix(&ints(&[1, 1])).unwrap();
        assert_eq!(p, Mat2::new(0.into(), (-1).into(), 1.into(), (-1).into()));
        assert_eq!(is_quiddity(&ints(&[1, 1])).unwrap(), None);
        assert_eq!(is_quiddity(&ints(&[0])).unwrap(), None);
        assert_eq!(is_quiddity(&ints(&[1, 1, 1])).unwrap(), Some(Sign::Minus));
    }

    #[test]
    fn product_order_puts_last_entry_leftmost() {
        let t = ints(&[2, 5]);
        let expected = &Mat2::factor(&t[1]) * &Mat2::factor(&t[0]);
        assert_eq!(product_matrix(&t).unwrap(), expected);
    }

    #[test]
    fn continuant_closed_forms() {
        let (a1, a2, a3, a4) = (sym("a1"), sym("a2"), sym("a3"), sym("a4"));
        let k2 = &(&a1 * &a2) - &RingElem::one();
        assert_eq!(continuant(&[a1.clone(), a2.clone()]).unwrap(), k2);
        let k3 = &(&(&(&a1 * &a2) * &a3) - &a3) - &a1;
        assert_eq!(
            continuant(&[a1.clone(), a2.clone(), a3.clone()]).unwrap(),
            k3
        );
        let k4 = &(&(&(&(&(&(&a1 * &a2) * &a3) * &a4) - &(&a3 * &a4)) - &(&a1 * &a4))
            - &(&a1 * &a2))
            + &RingElem::one();
        let four = [a1.clone(), a2.clone(), a3.clone(), a4.clone()];
        assert_eq!(continuant(&four).unwrap(), k4);
        assert_eq!(continuant_euler(&four).unwrap(), k4);
        assert_eq!(continuant(&[]).unwrap(), RingElem::one());
        assert_eq!(continuant_euler(&[]).unwrap(), RingElem::one());
        assert_eq!(continuant_euler(std::slice::from_ref(&a1)).unwrap(), a1);
    }

    #[test]
    fn euler_agrees_on_all_ones() {
        let ones = ints(&[1, 1, 1, 1, 1]);
        assert_eq!(continuant_euler(&ones).unwrap(), continuant(&ones).unwrap());
    }

    #[test]
    fn euler_size_limit() {
        let long = ints(&[1; 21]);
        assert!(matches!(
            continuant_euler(&long),
            Err(Error::SizeLimit { size: 21, max: 20 })
        ));
    }

    #[test]
    fn splice_sum_examples() {
        assert_eq!(sum_oplus(&[2, 0, 3], &[1, 1, 0]).unwrap(), vec![2, 0, 4, 1]);
        assert_eq!(
            sum_oplus(&[2, 3, 4], &[4, 1, 0, 8]).unwrap(),
            vec![10, 3, 8, 1, 0]
        );
        assert_eq!(
            sum_oplus(&[1, 3, 5, 3], &[3, 2, 2, 5, 4]).unwrap(),
            vec![5, 3, 5, 6, 2, 2, 5]
        );
        let a = [4, -1, 7, 2, 9];
        assert_eq!(sum_oplus(&a, &[0, 0]).unwrap(), a.to_vec());
        assert_eq!(sum_oplus(&[0, 0], &a).unwrap(), vec![9, 4, -1, 7, 2]);
        assert!(matches!(
            sum_oplus(&[1], &[1, 1]),
            Err(Error::SizeTooSmall { .. })
        ));
        let r2 = RingElem::quad(0, 1, 2);
        let r3 = RingElem::quad(0, 1, 3);
        assert!(sum_oplus_elems(&[r2.clone(), r2], &[r3.clone(), r3]).is_err());
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(canonical_form(&[0, 3, 0, -3]), vec![-3, 0, 3, 0]);
        assert_eq!(canonical_form(&[1, 1, 1]), vec![1, 1, 1]);
        assert_eq!(canonical_form(&[2, 1, 3]), vec![1, 2, 3]);
        // reversal needed: (1,3,2) reversed is (2,3,1) -> rotations include (1,2,3)
        assert_eq!(canonical_form(&[1, 3, 2]), vec![1, 2, 3]);
        let q = [5, -2, 0, 4, -2, 1];
        let c = canonical_form(&q);
        assert_eq!(canonical_form(&c), c);
        for (_, _, rep) in dihedral_orbit(&q) {
            assert_eq!(canonical_form(&rep), c);
        }
    }

    #[test]
    fn zero_reduction() {
        let z = Generator::integers();
        let q = Quiddity::new(z, vec![0, 5, 0, -5]).unwrap();
        let r = reduce_zero(&q, 2).unwrap();
        assert_eq!(r.coeffs(), &[0, 0]);
        assert_eq!(r.sign(), q.sign().flip());
        let q = Quiddity::new(z, vec![0, 0, 0, 0]).unwrap();
        assert_eq!(reduce_zero(&q, 1).unwrap().coeffs(), &[0, 0]);
        // wrap-around windows
        let q = Quiddity::new(z, vec![0, 5, 0, -5]).unwrap();
        assert_eq!(reduce_zero(&q, 0).unwrap().coeffs(), &[0, 0]);
        assert!(matches!(reduce_zero(&q, 1), Err(Error::NotZeroAt(1))));
        let q = Quiddity::new(z, vec![1, 1, 1]).unwrap();
        assert!(matches!(
            reduce_zero(&q, 0),
            Err(Error::SizeTooSmall { .. })
        ));
    }

    #[test]
    fn zero_reduction_on_six_tuple() {
        let z = Generator::integers();
        // (2,0,3,0,-5,0) is only used if it verifies
        if let Ok(q) = Quiddity::new(z, vec![2, 0, 3, 0, -5, 0]) {
            for j in [1, 3, 5] {
                let r = reduce_zero(&q, j).unwrap();
                assert_eq!(r.sign(), q.sign().flip());
            }
        }
        let q = Quiddity::new(z, vec![0, 0, 0, 0, 0, 0]).unwrap();
        for j in 0..6 {
            assert!(reduce_zero(&q, j).unwrap().reverify());
        }
    }

    #[test]
    fn unit_reduction() {
        let (a, b) = (sym("a1"), sym("a2"));
        let (out, flipped) = reduce_unit(&[a.clone(), RingElem::one(), b.clone()], 1).unwrap();
        assert_eq!(out, vec![&a - &RingElem::one(), &b - &RingElem::one()]);
        assert!(!flipped);
        let (out, flipped) = reduce_unit(&[a.clone(), RingElem::int(-1), b.clone()], 1).unwrap();
        assert_eq!(out, vec![&a + &RingElem::one(), &b + &RingElem::one()]);
        assert!(flipped);
        // M_3(a,1,b) = M_2(a-1,b-1) and M_3(a,-1,b) = -M_2(a+1,b+1)
        for mid in [1, -1] {
            let t = [a.clone(), RingElem::int(mid), b.clone()];
            let (out, flipped) = reduce_unit(&t, 1).unwrap();
            let lhs = product_matrix(&t).unwrap();
            let rhs = product_matrix(&out).unwrap();
            let rhs = if flipped { rhs.scale(Sign::Minus) } else { rhs };
            assert_eq!(lhs, rhs);
        }
        let (out, flipped) = reduce_unit(&ints(&[1, 1, 1]), 1).unwrap();
        assert_eq!(out, ints(&[0, 0]));
        assert!(!flipped);
        assert_eq!(is_quiddity(&out).unwrap(), Some(Sign::Minus));
        assert!(matches!(
            reduce_unit(&ints(&[2, 2, 2]), 1),
            Err(Error::NotUnitAt(1))
        ));
    }

    #[test]
    fn unit_reduction_wraps() {
        let t = ints(&[1, 2, 1, 2]);
        for j in [0, 2] {
            let (out, flipped) = reduce_unit(&t, j).unwrap();
            let sign = is_quiddity(&t).unwrap().unwrap();
            let expected = if flipped { sign.flip() } else { sign };
            assert_eq!(is_quiddity(&out).unwrap(), Some(expected), "j={j}");
        }
    }
}
