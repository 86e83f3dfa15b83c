//! Finite groups stored as dense multiplication tables.
//!
//! Elements are indices `0..n` and the identity is always index 0. All the
//! groups this crate works with are small (a few dozen elements), so a full
//! `n × n` table is the cheapest representation for the hot search loops.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a group element.
pub type Element = usize;

/// A set of group elements, ordered by index.
pub type ElementSet = BTreeSet<Element>;

/// Default cap on the number of elements enumerated by
/// [`FiniteGroup::from_permutation_generators`].
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Designated generators `x` and (optionally) `y` of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub x: Element,
    pub y: Option<Element>,
}

impl GeneratorSpec {
    pub fn single(x: Element) -> Self {
        GeneratorSpec { x, y: None }
    }

    pub fn pair(x: Element, y: Element) -> Self {
        GeneratorSpec { x, y: Some(y) }
    }

    pub fn elements(&self) -> Vec<Element> {
        std::iter::once(self.x).chain(self.y).collect()
    }

    /// True when `⟨x, y⟩` (or `⟨x⟩`) is the whole group.
    pub fn generates(&self, group: &FiniteGroup) -> bool {
        self.elements().iter().all(|&e| e < group.order())
            && group.generated_subgroup(self.elements()).len() == group.order()
    }

    /// Swaps `x` and `y` when `o(x) < 3 ≤ o(y)`, so that `x` has order at
    /// least three whenever either generator does.
    pub fn with_long_x(self, group: &FiniteGroup) -> Self {
        match self.y {
            Some(y) if group.element_order(self.x) < 3 && group.element_order(y) >= 3 => {
                GeneratorSpec {
                    x: y,
                    y: Some(self.x),
                }
            }
            _ => self,
        }
    }
}

/// A finite group given by its multiplication and inverse tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    generators: GeneratorSpec,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table.
    ///
    /// The table must have identity 0 and every row and column must be a
    /// permutation of `0..n`. Associativity is not checked here; see
    /// [`FiniteGroup::is_associative`].
    pub fn from_table(n: usize, table: &[usize], generators: GeneratorSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        if table.len() != n * n {
            return Err(Error::Malformed(format!(
                "multiplication table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                order: n,
            });
        }
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(Error::Malformed("element 0 is not the identity".into()));
            }
        }
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let v = table[a * n + b];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Malformed(format!("row {a} is not a permutation")));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let v = table[b * n + a];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Malformed(format!("column {a} is not a permutation")));
                }
            }
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u32)
            .collect();
        for e in generators.elements() {
            if e >= n {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    order: n,
                });
            }
        }
        Ok(FiniteGroup {
            n,
            mult: table.iter().map(|&v| v as u32).collect(),
            inv,
            generators,
        })
    }

    /// The cyclic group `Z_n`; element `i` stands for `x^i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        let mult = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let inv = (0..n).map(|a| ((n - a) % n) as u32).collect();
        let x = if n == 1 { 0 } else { 1 };
        Ok(FiniteGroup {
            n,
            mult,
            inv,
            generators: GeneratorSpec::single(x),
        })
    }

    /// Direct product `G × H`; the pair `(a, b)` has index `a·|H| + b`.
    ///
    /// The designated generators are the non-identity generators of both
    /// factors embedded in the product, first two kept.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (gn, hn) = (g.n, h.n);
        let n = gn * hn;
        let mut mult = Vec::with_capacity(n * n);
        for a in 0..n {
            let (a1, a2) = (a / hn, a % hn);
            for b in 0..n {
                let (b1, b2) = (b / hn, b % hn);
                mult.push((g.mul(a1, b1) * hn + h.mul(a2, b2)) as u32);
            }
        }
        let inv = (0..n)
            .map(|a| (g.inv(a / hn) * hn + h.inv(a % hn)) as u32)
            .collect();
        let mut gens: Vec<Element> = g
            .generators
            .elements()
            .into_iter()
            .map(|e| e * hn)
            .chain(h.generators.elements())
            .filter(|&e| e != 0)
            .collect();
        gens.dedup();
        let generators = match gens.as_slice() {
            [] => GeneratorSpec::single(0),
            [x] => GeneratorSpec::single(*x),
            [x, y, ..] => GeneratorSpec::pair(*x, *y),
        };
        FiniteGroup {
            n,
            mult,
            inv,
            generators,
        }
    }

    /// Enumerates the group generated by the given permutations of
    /// `0..degree`, with at most [`DEFAULT_CLOSURE_CAP`] elements.
    pub fn from_permutation_generators(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutation_generators_capped(degree, gens, DEFAULT_CLOSURE_CAP)
    }

    /// Breadth-first closure over generator words with left multiplication.
    /// The identity is element 0 and the designated generators are the
    /// first two supplied permutations.
    pub fn from_permutation_generators_capped(
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in gens {
            check_permutation(degree, g)?;
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for s in gens {
                let prod = compose(s, &elements[e]);
                if !index.contains_key(&prod) {
                    if elements.len() == cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&compose(a, b)]);
            }
        }
        let gen_index = |p: &Vec<usize>| index[p];
        let generators = match gens {
            [x] => GeneratorSpec::single(gen_index(x)),
            [x, y, ..] => GeneratorSpec::pair(gen_index(x), gen_index(y)),
            [] => unreachable!(),
        };
        Self::from_table(n, &table, generators)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mult[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inv[a] as usize
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn generators(&self) -> GeneratorSpec {
        self.generators
    }

    pub fn with_generators(mut self, spec: GeneratorSpec) -> Result<Self> {
        for e in spec.elements() {
            if e >= self.n {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    order: self.n,
                });
            }
        }
        self.generators = spec;
        Ok(self)
    }

    /// Least `k ≥ 1` with `g^k = 1`.
    pub fn element_order(&self, g: Element) -> usize {
        let mut k = 1;
        let mut acc = g;
        while acc != 0 {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing `set`.
    pub fn generated_subgroup(&self, set: impl IntoIterator<Item = Element>) -> ElementSet {
        let gens: Vec<Element> = set.into_iter().collect();
        let mut out = ElementSet::from([0]);
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for &s in &gens {
                let p = self.mul(a, s);
                if out.insert(p) {
                    stack.push(p);
                }
            }
        }
        out
    }

    /// `S⁻¹ = { s⁻¹ : s ∈ S }`.
    pub fn inverse_set(&self, set: &ElementSet) -> ElementSet {
        set.iter().map(|&s| self.inv(s)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True for the Klein four-group `Z₂²`.
    pub fn is_klein_four(&self) -> bool {
        self.n == 4 && (1..4).all(|g| self.element_order(g) == 2)
    }

    /// True when some single element generates the group.
    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|g| self.element_order(g) == self.n)
    }

    /// Stable 64-bit FNV-1a hash of the multiplication table, used to tie
    /// checkpoints to the group they were computed for.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &e in std::iter::once(&(self.n as u32)).chain(&self.mult) {
            for b in e.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }

    /// Exhaustive `O(n³)` associativity check.
    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }
}

/// Composition of permutations as right actions: `(a·b)(p) = b(a(p))`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&p| b[p]).collect()
}

fn check_permutation(degree: usize, images: &[usize]) -> Result<()> {
    if images.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "expected {degree} images, got {}",
            images.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &p in images {
        if p >= degree || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(format!(
                "{images:?} is not a bijection"
            )));
        }
    }
    Ok(())
}

/// Small named groups used by the two-generator constructions.
pub mod catalog {
    use super::*;

    fn cycle(n: usize) -> Vec<usize> {
        (0..n).map(|i| (i + 1) % n).collect()
    }

    /// `S₃` with `x` a 3-cycle and `y` a transposition.
    pub fn symmetric3() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(3, &[cycle(3), vec![1, 0, 2]]).unwrap()
    }

    /// Dihedral group of order `2n` (`n ≥ 3`): `x` a rotation, `y` a reflection.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n < 3 {
            return Err(Error::Precondition(format!(
                "dihedral group needs n >= 3, got {n}"
            )));
        }
        let reflection = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutation_generators(n, &[cycle(n), reflection])
    }

    /// Quaternion group `Q₈` with `x = i`, `y = j`, in its right regular
    /// representation on 8 points.
    pub fn quaternion() -> FiniteGroup {
        // Point 2u + s encodes (-1)^s · e_u with e_0..e_3 = 1, i, j, k.
        fn unit_mul(a: usize, b: usize) -> (usize, usize) {
            const TABLE: [[(usize, usize); 4]; 4] = [
                [(0, 0), (1, 0), (2, 0), (3, 0)],
                [(1, 0), (0, 1), (3, 0), (2, 1)],
                [(2, 0), (3, 1), (0, 1), (1, 0)],
                [(3, 0), (2, 0), (1, 1), (0, 1)],
            ];
            TABLE[a][b]
        }
        let right_mul = |unit: usize| -> Vec<usize> {
            (0..8)
                .map(|p| {
                    let (u, s) = (p / 2, p % 2);
                    let (w, t) = unit_mul(u, unit);
                    2 * w + (s ^ t)
                })
                .collect()
        };
        FiniteGroup::from_permutation_generators(8, &[right_mul(1), right_mul(2)]).unwrap()
    }

    /// `A₄` with `x = (0 1 2)` and `y = (0 1)(2 3)`.
    pub fn alternating4() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let z1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.generators().x, 0);

        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(z2.inv(1), 1);

        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.mul(1, 3), 0);
        assert_eq!(z4.element_order(1), 4);
        assert_eq!(z4.pow(1, -2), 2);

        assert_eq!(FiniteGroup::cyclic(0), Err(Error::EmptyGroup));
    }

    #[test]
    fn klein_four_from_product() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let k = FiniteGroup::direct_product(&z2, &z2);
        assert_eq!(k.order(), 4);
        assert!(k.is_klein_four());
        assert_eq!(k.element_order(3), 2);
        assert_eq!(k.generators(), GeneratorSpec::pair(2, 1));
        assert_eq!(k.generated_subgroup([2, 1]).len(), 4);
    }

    #[test]
    fn product_with_trivial_factor_is_a_copy() {
        let z1 = FiniteGroup::cyclic(1).unwrap();
        let s3 = catalog::symmetric3();
        let p = FiniteGroup::direct_product(&z1, &s3);
        assert_eq!(p.mult, s3.mult);
        assert_eq!(p.generators(), s3.generators());
    }

    #[test]
    fn z2_times_z3_is_cyclic() {
        let p = FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::cyclic(3).unwrap(),
        );
        assert_eq!(p.order(), 6);
        // (1,1) has index 1·3 + 1
        assert_eq!(p.element_order(4), 6);
    }

    #[test]
    fn permutation_closure() {
        let s3 = catalog::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let x = s3.generators().x;
        assert_eq!(s3.element_order(x), 3);
        assert_eq!(s3.generated_subgroup([x]).len(), 3);

        let trivial = FiniteGroup::from_permutation_generators(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(trivial.order(), 1);

        assert_eq!(
            FiniteGroup::from_permutation_generators(3, &[]),
            Err(Error::NoGenerators)
        );
        assert!(matches!(
            FiniteGroup::from_permutation_generators(3, &[vec![0, 0, 1]]),
            Err(Error::InvalidPermutation(_))
        ));
        assert_eq!(
            FiniteGroup::from_permutation_generators_capped(
                4,
                &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]],
                10
            ),
            Err(Error::ClosureCapExceeded { cap: 10 })
        );
    }

    #[test]
    fn four_cycle_matches_cyclic_table() {
        let g = FiniteGroup::from_permutation_generators(4, &[vec![1, 2, 3, 0]]).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let x = g.generators().x;
        let power_of: Vec<usize> = (0..4).map(|k| g.pow(x, k)).collect();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.mul(power_of[a], power_of[b]), power_of[z4.mul(a, b)]);
            }
        }
    }

    #[test]
    fn catalog_groups() {
        let q8 = catalog::quaternion();
        assert_eq!(q8.order(), 8);
        assert_eq!((0..8).filter(|&g| q8.element_order(g) == 2).count(), 1);
        assert!(q8.generators().generates(&q8));

        let d4 = catalog::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!((0..8).filter(|&g| d4.element_order(g) == 2).count(), 5);

        let a4 = catalog::alternating4();
        assert_eq!(a4.order(), 12);
        assert!(a4.generators().generates(&a4));
        assert!(!a4.is_cyclic());
    }

    #[test]
    fn swap_puts_long_generator_first() {
        let g = FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::cyclic(4).unwrap(),
        );
        let spec = g.generators().with_long_x(&g);
        assert_eq!(g.element_order(spec.x), 4);
        assert_eq!(g.element_order(spec.y.unwrap()), 2);
    }
}
