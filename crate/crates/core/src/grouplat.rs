//! Subgroup lattices of small finite groups and the unique-maximal-subgroup
//! test.
//!
//! Groups enter as Cayley tables or as permutation generator lists (the
//! closure is computed); both are validated at construction. Subgroup
//! enumeration is the exhaustive closure-extension walk, workable up to
//! order 64. In the finite discrete case every subgroup is closed, so a
//! group "has a unique maximal subgroup" in the topological sense exactly
//! when it has a unique maximal proper subgroup here; the fixture sweep
//! confirms the dichotomy: that happens iff the group is cyclic of prime
//! power order.

use serde::Deserialize;
use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Finite group as a validated Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
}

pub const MAX_GROUP_ORDER: usize = 64;

impl FiniteGroup {
    /// Validate a Cayley table: Latin square, identity, inverses,
    /// associativity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroupTable(format!(
                "order {} exceeds the cap {}",
                n, MAX_GROUP_ORDER
            )));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGroupTable("table is not square over 0..n".into()));
            }
        }
        // rows and columns are permutations
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut seen_row[table[i][j]], true) {
                    return Err(Error::InvalidGroupTable(format!("row {} repeats a value", i)));
                }
                if std::mem::replace(&mut seen_col[table[j][i]], true) {
                    return Err(Error::InvalidGroupTable(format!("column {} repeats a value", i)));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| table[g][h] == identity) {
                return Err(Error::InvalidGroupTable(format!("{} has no inverse", g)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!(
                            "associativity fails at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { name, table, identity })
    }

    /// Group generated by permutations of `0..degree` (images listed per
    /// point); elements are ordered with the identity first, then
    /// lexicographically.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&v| v >= degree) {
                return Err(Error::InvalidGroupTable("generator is not a permutation".into()));
            }
            for &v in g {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidGroupTable("generator repeats a point".into()));
                }
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
        elements.insert(id.clone());
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        queue.push_back(id.clone());
        while let Some(cur) = queue.pop_front() {
            for g in generators {
                // apply g after cur
                let next: Vec<usize> = cur.iter().map(|&v| g[v]).collect();
                if elements.insert(next.clone()) {
                    if elements.len() > MAX_GROUP_ORDER {
                        return Err(Error::InvalidGroupTable(format!(
                            "closure exceeds the order cap {}",
                            MAX_GROUP_ORDER
                        )));
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut ordered: Vec<Vec<usize>> = elements.into_iter().collect();
        // identity first, rest already lexicographic
        let id_pos = ordered.iter().position(|p| *p == id).unwrap();
        ordered.swap(0, id_pos);
        ordered[1..].sort();
        let index_of = |p: &Vec<usize>| ordered.iter().position(|q| q == p).unwrap();
        let n = ordered.len();
        let mut table = vec![vec![0; n]; n];
        for (i, a) in ordered.iter().enumerate() {
            for (j, b) in ordered.iter().enumerate() {
                let prod: Vec<usize> = b.iter().map(|&v| a[v]).collect();
                table[i][j] = index_of(&prod);
            }
        }
        Self::from_table(name, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut ord = 1;
        while x != self.identity {
            x = self.op(x, g);
            ord += 1;
        }
        ord
    }

    /// Generator index when the group is cyclic: the smallest element of
    /// full order.
    pub fn is_cyclic(&self) -> Option<usize> {
        (0..self.order()).find(|&g| self.element_order(g) == self.order())
    }

    /// Subgroup generated by a set of elements, as a sorted index list.
    pub fn generated_subgroup(&self, seed: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[self.identity] = true;
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(self.identity);
        for &s in seed {
            if !std::mem::replace(&mut members[s], true) {
                queue.push_back(s);
            }
        }
        let mut current: Vec<usize> = members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
            .collect();
        loop {
            let mut added = false;
            let snapshot = current.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    let p = self.op(a, b);
                    if !std::mem::replace(&mut members[p], true) {
                        current.push(p);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
            current.sort_unstable();
        }
        current.sort_unstable();
        current
    }
}

/// The complete subgroup lattice: subgroups sorted by (order, elements),
/// the containment relation, and the maximal proper subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Vec<usize>>,
    /// `contains[i][j]` iff subgroup j is a subset of subgroup i.
    contains: Vec<Vec<bool>>,
    maximal: Vec<usize>,
}

impl SubgroupLattice {
    pub fn subgroups(&self) -> &[Vec<usize>] {
        &self.subgroups
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.contains[i][j]
    }

    /// Indices of the maximal proper subgroups.
    pub fn maximal(&self) -> &[usize] {
        &self.maximal
    }
}

/// Enumerate every subgroup by closure extension: repeatedly extend each
/// known subgroup by one outside element and close.
pub fn subgroups(group: &FiniteGroup) -> Result<SubgroupLattice> {
    if group.order() > MAX_GROUP_ORDER {
        return Err(Error::InvalidGroupTable(format!(
            "order {} exceeds the cap {}",
            group.order(),
            MAX_GROUP_ORDER
        )));
    }
    let trivial = vec![group.identity()];
    let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
    known.insert(trivial.clone());
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    queue.push_back(trivial);
    while let Some(h) = queue.pop_front() {
        for g in 0..group.order() {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(g);
            let bigger = group.generated_subgroup(&seed);
            if known.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    let mut subgroups: Vec<Vec<usize>> = known.into_iter().collect();
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let m = subgroups.len();
    let mut contains = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            contains[i][j] = subgroups[j].iter().all(|e| subgroups[i].binary_search(e).is_ok());
        }
    }
    let full = m - 1;
    debug_assert_eq!(subgroups[full].len(), group.order());
    let maximal = (0..m)
        .filter(|&i| {
            i != full
                && (0..m).all(|k| k == i || k == full || !(contains[k][i] && subgroups[k].len() > subgroups[i].len()))
        })
        .collect();
    Ok(SubgroupLattice { subgroups, contains, maximal })
}

/// True iff the group has exactly one maximal proper subgroup. The trivial
/// group has none at all and is rejected.
pub fn is_m_group(group: &FiniteGroup) -> Result<bool> {
    if group.order() == 1 {
        return Err(Error::InvalidArgument {
            argument: "group",
            reason: "the trivial group has no maximal subgroup".into(),
        });
    }
    Ok(subgroups(group)?.maximal().len() == 1)
}

/// Fixture formats accepted from JSON: an explicit Cayley table or a
/// permutation generator list.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupFixture {
    Table { name: String, order: usize, table: Vec<Vec<usize>> },
    Permutations { name: String, degree: usize, generators: Vec<Vec<usize>> },
}

impl GroupFixture {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupFixture::Table { name, order, table } => {
                if table.len() != *order {
                    return Err(Error::InvalidGroupTable(format!(
                        "declared order {} but table has {} rows",
                        order,
                        table.len()
                    )));
                }
                FiniteGroup::from_table(name.clone(), table.clone())
            }
            GroupFixture::Permutations { name, degree, generators } => {
                FiniteGroup::from_permutations(name.clone(), *degree, generators)
            }
        }
    }
}

/// Built-in fixture groups.
pub mod fixtures {
    use super::FiniteGroup;

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(format!("C{}", n), table).expect("cyclic tables are groups")
    }

    /// Direct product of two cyclic groups.
    pub fn cyclic_product(a: usize, b: usize) -> FiniteGroup {
        let n = a * b;
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (i1, i2) = (i / b, i % b);
                        let (j1, j2) = (j / b, j % b);
                        ((i1 + j1) % a) * b + (i2 + j2) % b
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("C{}xC{}", a, b), table).expect("product tables are groups")
    }

    pub fn symmetric3() -> FiniteGroup {
        FiniteGroup::from_permutations("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]])
            .expect("S3 generators")
    }

    pub fn alternating4() -> FiniteGroup {
        FiniteGroup::from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
            .expect("A4 generators")
    }

    pub fn dihedral(n: usize) -> FiniteGroup {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutations(format!("D{}", n), n, &[rotation, reflection])
            .expect("dihedral generators")
    }

    /// Quaternion group of order 8 as {1, -1, i, -i, j, -j, k, -k}.
    pub fn quaternion8() -> FiniteGroup {
        // encode g = (unit, sign): 0..4 = 1, i, j, k; table from the unit
        // quaternion products
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) => (x, false),
                (x, 0) => (x, false),
                (1, 1) => (0, true),
                (2, 2) => (0, true),
                (3, 3) => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let n = 8;
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (ua, sa) = (i / 2, i % 2 == 1);
                        let (ub, sb) = (j / 2, j % 2 == 1);
                        let (u, flip) = unit_mul(ua, ub);
                        let s = sa ^ sb ^ flip;
                        u * 2 + usize::from(s)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table("Q8", table).expect("quaternion units form a group")
    }

    /// The standard fixture set for the unique-maximal-subgroup dichotomy:
    /// all cyclic groups of order <= 32 plus the listed non-cyclic groups.
    pub fn dichotomy_fixtures() -> Vec<FiniteGroup> {
        let mut groups: Vec<FiniteGroup> = (2..=32).map(cyclic).collect();
        groups.push(cyclic_product(2, 2));
        groups.push(cyclic_product(2, 4));
        groups.push(cyclic_product(3, 3));
        groups.push(symmetric3());
        groups.push(dihedral(4));
        groups.push(quaternion8());
        groups.push(alternating4());
        groups.push(dihedral(6));
        groups
    }

    pub fn builtin(name: &str) -> Option<FiniteGroup> {
        match name {
            "S3" => Some(symmetric3()),
            "A4" => Some(alternating4()),
            "D4" => Some(dihedral(4)),
            "D6" => Some(dihedral(6)),
            "Q8" => Some(quaternion8()),
            "C2xC2" => Some(cyclic_product(2, 2)),
            "C2xC4" => Some(cyclic_product(2, 4)),
            "C3xC3" => Some(cyclic_product(3, 3)),
            _ => name
                .strip_prefix('C')
                .and_then(|rest| rest.parse::<usize>().ok())
                .filter(|&n| (1..=super::MAX_GROUP_ORDER).contains(&n))
                .map(cyclic),
        }
    }
}
