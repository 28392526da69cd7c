use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An element of a finite group, as an index into its Cayley table.
pub type Elem = usize;

/// A finite group given by its Cayley table. Index 0 is always the identity.
///
/// Two groups are equal when their tables are equal; names and labels are
/// display metadata only.
#[derive(Clone)]
pub struct FinGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.table == other.table)
    }
}

impl Eq for FinGroup {}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroup({}, order {})", self.name, self.order)
    }
}

impl fmt::Display for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FinGroup {
    /// Validates a Cayley table and builds the group. If the identity is not at
    /// index 0 the elements are relabeled by swapping it into place.
    pub fn new(table: Vec<Vec<Elem>>, name: impl Into<String>) -> Result<Self> {
        Self::from_table_relabeled(table, name).map(|(g, _)| g)
    }

    /// Like [`FinGroup::new`], also returning the relabeling `old index -> new index`.
    pub fn from_table_relabeled(
        table: Vec<Vec<Elem>>,
        name: impl Into<String>,
    ) -> Result<(Self, Vec<Elem>)> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {bad} in row {a} out of range")));
            }
        }
        check_latin(n, |a, b| table[a][b])?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;

        let mut relabel: Vec<Elem> = (0..n).collect();
        relabel.swap(0, identity);
        // relabel is an involution, so it is its own inverse.
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel[a] * n + relabel[b]] = relabel[table[a][b]];
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            relabel[a], relabel[b], relabel[c]
                        )));
                    }
                }
            }
        }
        Ok((Self::from_flat(n, flat, name), relabel))
    }

    /// Builds a group from a table the caller guarantees is a group table with
    /// identity 0 (products of groups, quotients, subgroups).
    pub(crate) fn from_flat(order: usize, table: Vec<Elem>, name: impl Into<String>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("group table without inverse");
        }
        let group = Self {
            name: name.into(),
            order,
            table,
            inverses,
            labels: None,
        };
        debug_assert!((0..order).all(|a| group.mul(0, a) == a && group.mul(a, 0) == a));
        group
    }

    /// Builds a group from a multiplication closure on `0..order`, identity 0.
    pub(crate) fn from_fn(
        order: usize,
        name: impl Into<String>,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b));
            }
        }
        Self::from_flat(order, table, name)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::NotAGroup(format!(
                "{} labels for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// `x a x^-1`
    #[inline]
    pub fn conj(&self, x: Elem, a: Elem) -> Elem {
        self.mul(self.mul(x, a), self.inv(x))
    }

    /// `a b^-1`
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn product(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Rows of the Cayley table, for serialization.
    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Multiset of element orders, sorted; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut profile: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        profile.sort_unstable();
        profile
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// A small generating set, chosen greedily by descending element order.
    /// Deterministic in the table.
    pub fn generators(&self) -> Vec<Elem> {
        let mut candidates: Vec<Elem> = (1..self.order).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut size = 1;
        for a in candidates {
            if size == self.order {
                break;
            }
            if !member[a] {
                gens.push(a);
                let span = self.closure(&gens);
                size = span.len();
                for x in span {
                    member[x] = true;
                }
            }
        }
        gens
    }

    /// Full associativity / Latin / identity check of the stored table.
    pub fn check(&self) -> Result<()> {
        check_latin(self.order, |a, b| self.mul(a, b))?;
        for a in self.elements() {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::NotAGroup("index 0 is not the identity".into()));
            }
            for b in self.elements() {
                for c in self.elements() {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_latin(n: usize, entry: impl Fn(usize, usize) -> usize) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let x = entry(a, b);
            if seen[x] == a {
                return Err(Error::NotAGroup(format!("row {a} is not a permutation")));
            }
            seen[x] = a;
        }
    }
    seen.fill(usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let x = entry(a, b);
            if seen[x] == b {
                return Err(Error::NotAGroup(format!("column {b} is not a permutation")));
            }
            seen[x] = b;
        }
    }
    Ok(())
}
