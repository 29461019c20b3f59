//! Secant configurations: fixed-point-free involutions on the corners of a
//! `2n`-gon, the closed ones among them, and the critical quivers they define.
//!
//! Points are `0..2n` internally and `1..=2n` in all text output. The polygon
//! rotation `g` sends `j` to `j + 1`; a configuration `s` is closed when the
//! permutation `j -> s(g(j))` is a single `2n`-cycle.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::quiver::{LocallyGentleQuiver, Quiver, WeightFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigurationError {
    #[error("pairing must have even positive length, got {0}")]
    BadSize(usize),
    #[error("pairing is not a fixed-point-free involution at point {0}")]
    NotInvolution(usize),
    #[error("points {0} and {1} are adjacent")]
    AdjacentPair(usize, usize),
    #[error("configuration is not closed")]
    NotClosed,
}

/// A pairing of the `2n` polygon corners with no corner paired to a neighbour.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SecantConfiguration {
    pairing: Vec<usize>,
}

impl SecantConfiguration {
    /// `pairing[j]` is the partner of point `j` (0-based).
    pub fn new(pairing: Vec<usize>) -> Result<SecantConfiguration, ConfigurationError> {
        let m = pairing.len();
        if m == 0 || m % 2 == 1 {
            return Err(ConfigurationError::BadSize(m));
        }
        for (j, &p) in pairing.iter().enumerate() {
            if p >= m || p == j || pairing[p] != j {
                return Err(ConfigurationError::NotInvolution(j + 1));
            }
            if (j + 1) % m == p {
                return Err(ConfigurationError::AdjacentPair(j + 1, p + 1));
            }
        }
        Ok(SecantConfiguration { pairing })
    }

    /// From 1-based pairs such as `[(1, 3), (2, 4)]`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<SecantConfiguration, ConfigurationError> {
        let mut pairing = vec![usize::MAX; 2 * n];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > 2 * n || b > 2 * n {
                return Err(ConfigurationError::NotInvolution(a.max(b)));
            }
            pairing[a - 1] = b - 1;
            pairing[b - 1] = a - 1;
        }
        if let Some(j) = pairing.iter().position(|&p| p == usize::MAX) {
            return Err(ConfigurationError::NotInvolution(j + 1));
        }
        SecantConfiguration::new(pairing)
    }

    pub fn n(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn is_closed(&self) -> bool {
        cycle_count_after_rotation(&self.pairing) == 1
    }

    /// Conjugate by the dihedral symmetry `j -> k + j` or, if `reflect`, `j -> k - j`.
    pub fn transformed(&self, k: usize, reflect: bool) -> SecantConfiguration {
        SecantConfiguration {
            pairing: conjugate(&self.pairing, k, reflect),
        }
    }
}

impl fmt::Display for SecantConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, &p) in self.pairing.iter().enumerate() {
            if j < p {
                write!(f, "({} {})", j + 1, p + 1)?;
            }
        }
        Ok(())
    }
}

fn conjugate(pairing: &[usize], k: usize, reflect: bool) -> Vec<usize> {
    let m = pairing.len();
    let g = |j: usize| if reflect { (k + m - j) % m } else { (k + j) % m };
    let mut out = vec![0; m];
    for (j, &p) in pairing.iter().enumerate() {
        out[g(j)] = g(p);
    }
    out
}

/// Number of cycles of `j -> pairing[j + 1]`.
fn cycle_count_after_rotation(pairing: &[usize]) -> usize {
    let m = pairing.len();
    let mut seen = vec![false; m];
    let mut cycles = 0;
    for s in 0..m {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = pairing[(j + 1) % m];
        }
    }
    cycles
}

/// All fixed-point-free involutions on `2n` points, in lexicographic order of
/// the partner list.
pub fn enumerate_involutions(n: usize) -> Vec<Vec<usize>> {
    let m = 2 * n;
    if m == 0 {
        return vec![Vec::new()];
    }
    // split by the partner of point 0; each branch is independent
    (1..m)
        .into_par_iter()
        .map(|p| {
            let mut pairing = vec![usize::MAX; m];
            pairing[0] = p;
            pairing[p] = 0;
            let mut out = Vec::new();
            extend_involutions(&mut pairing, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn extend_involutions(pairing: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some(i) = pairing.iter().position(|&p| p == usize::MAX) else {
        out.push(pairing.clone());
        return;
    };
    for j in i + 1..pairing.len() {
        if pairing[j] == usize::MAX {
            pairing[i] = j;
            pairing[j] = i;
            extend_involutions(pairing, out);
            pairing[i] = usize::MAX;
            pairing[j] = usize::MAX;
        }
    }
}

/// Secant configurations on the `2n`-gon.
pub fn enumerate_configurations(n: usize) -> Vec<SecantConfiguration> {
    enumerate_involutions(n)
        .into_iter()
        .filter_map(|p| SecantConfiguration::new(p).ok())
        .collect()
}

pub fn double_factorial(n: usize) -> BigUint {
    (1..=n).rev().step_by(2).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn closed_configurations(n: usize) -> Vec<SecantConfiguration> {
    enumerate_configurations(n).into_iter().filter(|c| c.is_closed()).collect()
}

pub fn count_closed(n: usize) -> usize {
    enumerate_configurations(n).par_iter().filter(|c| c.is_closed()).count()
}

/// `(2n-1)!!/(n+1)` for even `n`, zero for odd `n`.
pub fn hz_a_n1(n: usize) -> BigUint {
    if n % 2 == 1 {
        return BigUint::zero();
    }
    let df = double_factorial(2 * n - 1);
    let d = BigUint::from(n + 1);
    assert!((&df % &d).is_zero(), "(2n-1)!! is divisible by n+1 for even n");
    df / d
}

/// Univariate polynomial over the rationals, lowest degree first.
type RatPoly = Vec<BigRational>;

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// `binom(x, k) = x (x-1) ... (x-k+1) / k!`
fn binomial_poly(k: usize) -> RatPoly {
    let mut p: RatPoly = vec![BigRational::one()];
    for i in 0..k {
        // multiply by (x - i) / (i + 1)
        let mut next = vec![BigRational::zero(); p.len() + 1];
        let scale = BigRational::new(BigInt::one(), BigInt::from(i + 1));
        for (d, c) in p.iter().enumerate() {
            next[d + 1] += c * &scale;
            next[d] -= c * &scale * BigRational::from_integer(BigInt::from(i));
        }
        p = next;
    }
    p
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Counts `a[k]` = number of involutions `s` on `2n` points for which
/// `j -> s(j+1)` has exactly `k` cycles.
pub fn cycle_distribution(n: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); 2 * n + 1];
    for p in enumerate_involutions(n) {
        counts[cycle_count_after_rotation(&p)] += 1u32;
    }
    counts
}

/// Compares the brute-force cycle distribution with
/// `(2n-1)!! sum_k 2^(k-1) binom(n, k-1) binom(x, k)` as polynomials in `x`.
pub fn hz_polynomial_check(n: usize) -> bool {
    let lhs: RatPoly = trim(
        cycle_distribution(n)
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect(),
    );
    let df = BigRational::from_integer(BigInt::from(double_factorial(2 * n - 1)));
    let mut rhs: RatPoly = vec![BigRational::zero(); n + 2];
    for k in 1..=n + 1 {
        let coeff = &df * BigRational::from_integer((BigInt::one() << (k - 1)) * binomial(n, k - 1));
        for (d, c) in binomial_poly(k).into_iter().enumerate() {
            rhs[d] += &coeff * c;
        }
    }
    lhs == trim(rhs)
}

/// The critical quiver traced by a closed configuration.
///
/// Vertices are the pairs `{j, s(j)}`, named by their smaller 1-based point.
/// Arrow `a<k>` runs from the pair of `k` to the pair of `k+1` (the polygon
/// side), and `a<j-1> a<s(j)>` is a relation for every point `j`.
pub fn critical_quiver_from(
    c: &SecantConfiguration,
) -> Result<(LocallyGentleQuiver, WeightFunction), ConfigurationError> {
    if !c.is_closed() {
        return Err(ConfigurationError::NotClosed);
    }
    let m = c.pairing.len();
    let label = |j: usize| (j.min(c.pairing[j]) + 1).to_string();
    let mut q = Quiver::new();
    for j in 0..m {
        if j < c.pairing[j] {
            q.add_vertex(&label(j)).expect("one vertex per pair");
        }
    }
    let arrows: Vec<_> = (0..m)
        .map(|k| {
            let s = q.vertex_by_name(&label(k)).expect("declared");
            let t = q.vertex_by_name(&label((k + 1) % m)).expect("declared");
            q.add_arrow(&format!("a{}", k + 1), s, t).expect("fresh arrow")
        })
        .collect();
    for j in 0..m {
        let before = arrows[(j + m - 1) % m];
        let after = arrows[c.pairing[j]];
        q.add_relation(before, after).expect("both arrows meet at the pair of j");
    }
    let lgq = q.validate().expect("closed configurations give locally gentle quivers");
    let w = WeightFunction::generic(lgq.quiver());
    Ok((lgq, w))
}

/// Lexicographically least pairing in the dihedral orbit.
pub fn dihedral_canonical(c: &SecantConfiguration) -> Vec<usize> {
    let m = c.pairing.len();
    (0..m)
        .flat_map(|k| [false, true].map(|r| conjugate(&c.pairing, k, r)))
        .min()
        .expect("nonempty group")
}

/// Closed configurations up to rotation and reflection of the polygon.
pub fn count_closed_up_to_dihedral(n: usize) -> usize {
    let classes: BTreeSet<Vec<usize>> = closed_configurations(n).par_iter().map(dihedral_canonical).collect();
    classes.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_counts_are_double_factorials() {
        for n in 1..=5 {
            assert_eq!(BigUint::from(enumerate_involutions(n).len()), double_factorial(2 * n - 1));
        }
    }

    #[test]
    fn small_configurations() {
        assert!(enumerate_configurations(1).is_empty());
        let two = enumerate_configurations(2);
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].to_string(), "(1 3)(2 4)");
        assert!(two[0].is_closed());
    }

    #[test]
    fn configurations_match_a_naive_filter() {
        // oracle: all permutations of 6 points, keep involutions without fixed or adjacent pairs
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        let naive = perms(6)
            .into_iter()
            .filter(|p| (0..6).all(|j| p[j] != j && p[p[j]] == j && p[j] != (j + 1) % 6 && (p[j] + 1) % 6 != j))
            .count();
        assert_eq!(enumerate_configurations(3).len(), naive);
    }

    #[test]
    fn validation() {
        assert_eq!(SecantConfiguration::new(vec![1, 0]), Err(ConfigurationError::AdjacentPair(1, 2)));
        assert_eq!(SecantConfiguration::new(vec![0, 1]), Err(ConfigurationError::NotInvolution(1)));
        assert_eq!(SecantConfiguration::new(vec![]), Err(ConfigurationError::BadSize(0)));
        assert!(SecantConfiguration::from_pairs(2, &[(1, 3), (2, 4)]).is_ok());
    }

    #[test]
    fn closed_counts_and_formula() {
        let expected = [0u32, 1, 0, 21];
        for (n, &e) in (1..=4).zip(&expected) {
            assert_eq!(count_closed(n), e as usize);
            assert_eq!(hz_a_n1(n), BigUint::from(e));
        }
    }

    #[test]
    fn polynomial_identity_small_cases() {
        assert_eq!(cycle_distribution(1), vec![BigUint::zero(), BigUint::zero(), BigUint::one()]);
        for n in 1..=4 {
            assert!(hz_polynomial_check(n), "n = {n}");
        }
    }

    #[test]
    fn binomial_polynomials() {
        // binom(x, 2) = -x/2 + x^2/2
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(binomial_poly(2), vec![BigRational::zero(), -half.clone(), half]);
    }

    #[test]
    fn square_gives_the_two_vertex_critical_quiver() {
        let c = SecantConfiguration::from_pairs(2, &[(1, 3), (2, 4)]).unwrap();
        let (lgq, _) = critical_quiver_from(&c).unwrap();
        assert!(lgq.is_critical());
        let q = lgq.quiver();
        let names: Vec<_> = q.vertex_ids().map(|v| q.vertex_name(v).to_string()).collect();
        assert_eq!(names, ["1", "2"]);
        let mut rels: Vec<_> = q
            .relations()
            .map(|(a, b)| format!("{}{}", q.arrow_name(a), q.arrow_name(b)))
            .collect();
        rels.sort();
        assert_eq!(rels, ["a1a4", "a2a1", "a3a2", "a4a3"]);
    }

    #[test]
    fn open_configuration_is_rejected() {
        let open = enumerate_configurations(3).into_iter().next().unwrap();
        assert!(!open.is_closed());
        assert_eq!(critical_quiver_from(&open).unwrap_err(), ConfigurationError::NotClosed);
    }

    #[test]
    fn dihedral_orbits() {
        assert_eq!(count_closed_up_to_dihedral(2), 1);
        assert_eq!(count_closed_up_to_dihedral(3), 0);
        let n4 = count_closed_up_to_dihedral(4);
        assert!(4 * 4 * n4 >= 21 && n4 <= 21);
    }
}
