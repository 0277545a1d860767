use std::collections::{BTreeMap, BTreeSet};

use crate::error::{domain, Result};

/// A total function between finite sets of ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMap {
    table: BTreeMap<u32, u32>,
    codomain: BTreeSet<u32>,
}

impl FiniteMap {
    pub fn new(table: BTreeMap<u32, u32>, codomain: BTreeSet<u32>) -> Result<Self> {
        if let Some((x, y)) = table.iter().find(|(_, y)| !codomain.contains(y)) {
            return Err(domain(format!("{x} maps to {y}, outside the codomain")));
        }
        Ok(FiniteMap { table, codomain })
    }

    /// Map from positions `0..n` given as a list of images.
    pub fn from_positions(images: &[u32], codomain: BTreeSet<u32>) -> Result<Self> {
        Self::new(images.iter().enumerate().map(|(i, &y)| (i as u32, y)).collect(), codomain)
    }

    pub fn identity(set: &BTreeSet<u32>) -> Self {
        FiniteMap { table: set.iter().map(|&x| (x, x)).collect(), codomain: set.clone() }
    }

    pub fn domain(&self) -> BTreeSet<u32> {
        self.table.keys().copied().collect()
    }

    pub fn codomain(&self) -> &BTreeSet<u32> {
        &self.codomain
    }

    pub fn apply(&self, x: u32) -> Result<u32> {
        self.table.get(&x).copied().ok_or_else(|| domain(format!("{x} is not in the domain")))
    }

    pub fn table(&self) -> &BTreeMap<u32, u32> {
        &self.table
    }

    pub fn image(&self) -> BTreeSet<u32> {
        self.table.values().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.table.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.codomain
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FiniteMap) -> Result<FiniteMap> {
        let table = self
            .table
            .iter()
            .map(|(&x, &y)| Ok((x, next.apply(y)?)))
            .collect::<Result<_>>()?;
        Ok(FiniteMap { table, codomain: next.codomain.clone() })
    }
}

fn check_codomains(f: &FiniteMap, g: &FiniteMap) -> Result<()> {
    if f.codomain != g.codomain {
        return Err(domain("maps have different codomains"));
    }
    Ok(())
}

pub fn image_union(f: &FiniteMap, g: &FiniteMap) -> Result<BTreeSet<u32>> {
    check_codomains(f, g)?;
    Ok(f.image().union(&g.image()).copied().collect())
}

pub fn image_intersection(f: &FiniteMap, g: &FiniteMap) -> Result<BTreeSet<u32>> {
    check_codomains(f, g)?;
    Ok(f.image().intersection(&g.image()).copied().collect())
}
