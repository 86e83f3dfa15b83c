//! Permutation groups with a deterministic Schreier–Sims stabilizer chain.

use std::collections::{HashSet, VecDeque};

use super::perm::Permutation;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators first introduced at this level. They fix every
    /// earlier base point.
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    transversal_inv: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            transversal_inv: vec![None; degree],
        };
        level.reset_orbit(degree);
        level
    }

    fn reset_orbit(&mut self, degree: usize) {
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal_inv.iter_mut().for_each(|t| *t = None);
        self.orbit = vec![self.base];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.transversal_inv[self.base] = Some(Permutation::identity(degree));
    }
}

/// A permutation group given by generators, with a stabilizer chain for
/// order, membership and stabilizer computations.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Builds the chain with the given points first in the base; the rest
    /// of the base is chosen as the smallest point moved at each stage.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::VertexOutOfRange {
                vertex: p,
                nv: degree,
            });
        }
        let mut group = PermGroup {
            degree,
            generators,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        group.build_chain();
        Ok(group)
    }

    fn build_chain(&mut self) {
        let nontrivial: Vec<Permutation> = self
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if nontrivial.is_empty() {
            return;
        }
        if self.levels.is_empty() {
            let base = first_moved_point(&nontrivial[0]);
            self.levels.push(Level::new(base, self.degree));
        }
        self.levels[0].gens.extend(nontrivial);

        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            self.recompute_orbit(level);
            match self.failing_schreier_generator(level) {
                Some((j, residue)) => {
                    if j == self.levels.len() {
                        let base = first_moved_point(&residue);
                        self.levels.push(Level::new(base, self.degree));
                    }
                    self.levels[j].gens.push(residue);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn strong_gens_from(&self, level: usize) -> impl Iterator<Item = &Permutation> {
        self.levels[level..].iter().flat_map(|l| l.gens.iter())
    }

    fn recompute_orbit(&mut self, level: usize) {
        let gens: Vec<Permutation> = self.strong_gens_from(level).cloned().collect();
        let degree = self.degree;
        let lv = &mut self.levels[level];
        lv.reset_orbit(degree);
        let mut queue = VecDeque::from([lv.base]);
        while let Some(p) = queue.pop_front() {
            for s in &gens {
                let q = s.apply(p);
                if lv.transversal[q].is_none() {
                    let u = lv.transversal[p].as_ref().unwrap().then(s);
                    lv.transversal_inv[q] = Some(u.inverse());
                    lv.transversal[q] = Some(u);
                    lv.orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
    }

    /// First Schreier generator at `level` that does not sift through the
    /// levels below, with the level where it got stuck.
    fn failing_schreier_generator(&self, level: usize) -> Option<(usize, Permutation)> {
        let lv = &self.levels[level];
        for &p in &lv.orbit {
            let u_p = lv.transversal[p].as_ref().unwrap();
            for s in self.strong_gens_from(level) {
                let q = s.apply(p);
                let schreier = u_p.then(s).then(lv.transversal_inv[q].as_ref().unwrap());
                if let Some(stuck) = self.sift_from(level + 1, schreier) {
                    return Some(stuck);
                }
            }
        }
        None
    }

    /// Sifts `g` from `level` down; `None` if it reduces to the identity.
    fn sift_from(&self, level: usize, mut g: Permutation) -> Option<(usize, Permutation)> {
        for (k, lv) in self.levels.iter().enumerate().skip(level) {
            let p = g.apply(lv.base);
            match &lv.transversal_inv[p] {
                Some(inv) => g = g.then(inv),
                None => return Some((k, g)),
            }
        }
        if g.is_identity() {
            None
        } else {
            Some((self.levels.len(), g))
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the transversal sizes, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, sigma: &Permutation) -> Result<bool> {
        if sigma.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: sigma.degree(),
            });
        }
        Ok(self.sift_from(0, sigma.clone()).is_none())
    }

    /// Orbits on `0..degree`, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for p in 0..self.degree {
                uf.union(p, g.apply(p));
            }
        }
        uf.classes()
    }

    /// Every point stabilizer is trivial, i.e. every orbit has length `|P|`.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits().iter().all(|o| o.len() as u128 == order)
    }

    /// The point stabilizer `P_point`, generated by the strong generators
    /// below the first level of a chain based at `point`.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        let chain = PermGroup::with_base_prefix(self.degree, self.generators.clone(), &[point])?;
        let mut gens: Vec<Permutation> = chain
            .levels
            .iter()
            .skip(1)
            .flat_map(|l| l.gens.clone())
            .collect();
        gens.sort();
        gens.dedup();
        PermGroup::new(self.degree, gens)
    }

    /// Enumerates every element; intended for small groups in tests.
    pub fn elements(&self) -> HashSet<Permutation> {
        let id = Permutation::identity(self.degree);
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in &self.generators {
                let p = e.then(g);
                if seen.insert(p.clone()) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }
}

fn first_moved_point(g: &Permutation) -> usize {
    (0..g.degree())
        .find(|&p| !g.fixes(p))
        .expect("non-identity permutation")
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut p: usize) -> usize {
        while self.parent[p] != p {
            self.parent[p] = self.parent[self.parent[p]];
            p = self.parent[p];
        }
        p
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    pub(crate) fn class_size(&mut self, p: usize) -> usize {
        let r = self.find(p);
        self.size[r]
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for p in 0..n {
            let r = self.find(p);
            by_root[r].push(p);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(4, vec![Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbits().len(), 4);
        assert!(g.is_semiregular());
        assert!(g.contains(&Permutation::identity(4)).unwrap());
    }

    #[test]
    fn cyclic_group() {
        let g = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_semiregular());
        assert_eq!(g.orbits(), vec![vec![0, 1, 2, 3, 4, 5]]);
        assert!(!g.contains(&cyc(6, &[&[0, 1]])).unwrap());
        assert!(g.contains(&cyc(6, &[&[0, 2, 4], &[1, 3, 5]])).unwrap());
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..=7usize {
            let g = PermGroup::new(
                n,
                vec![cyc(n, &[&(0..n).collect::<Vec<_>>()]), cyc(n, &[&[0, 1]])],
            )
            .unwrap();
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(g.order(), fact);
            assert_eq!(g.orbits().len(), 1);
            assert_eq!(g.is_semiregular(), n == 2);
            let stab = g.stabilizer(0).unwrap();
            assert_eq!(stab.order(), fact / n as u128);
            assert!(stab.generators().iter().all(|s| s.fixes(0)));
        }
    }

    #[test]
    fn chain_order_matches_enumeration() {
        // A4 on 4 points and D5 on 5 points.
        let a4 =
            PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.elements().len(), 12);
        let d5 = PermGroup::new(
            5,
            vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 4], &[2, 3]])],
        )
        .unwrap();
        assert_eq!(d5.order(), 10);
        for e in d5.elements() {
            assert!(d5.contains(&e).unwrap());
        }
    }

    #[test]
    fn membership_degree_mismatch() {
        let g = PermGroup::trivial(3);
        assert_eq!(
            g.contains(&Permutation::identity(4)),
            Err(Error::DegreeMismatch {
                expected: 3,
                got: 4
            })
        );
    }
}
