// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::profile::{Alternative, Domain, LinearOrder, Profile};

/// Default cap on the number of entries a table rule may hold.
pub const DEFAULT_TABLE_LIMIT: usize = 1 << 22;

/// Every profile of `voters` voters over a domain, in canonical order.
///
/// A profile's index is the mixed-radix number whose digits are the voters'
/// lexicographic order indices, voter 1 most significant. This encoding is
/// also the line numbering of table entry files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileSpace {
    domain: Domain,
    voters: usize,
    orders: Vec<LinearOrder>,
}

impl ProfileSpace {
    pub fn new(domain: Domain, voters: usize) -> Result<Self> {
        if voters == 0 {
            return Err(Error::EmptyProfile);
        }
        if domain.len() > 8 {
            return Err(Error::TableTooLarge { limit: DEFAULT_TABLE_LIMIT });
        }
        Ok(ProfileSpace { domain, voters, orders: domain.orders() })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    /// `m!`
    pub fn radix(&self) -> usize {
        self.orders.len()
    }

    /// The orders in lexicographic order; digit `d` denotes `orders()[d]`.
    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    /// `(m!)^n`, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        (self.radix() as u64).checked_pow(self.voters as u32)
    }

    pub fn index_of(&self, profile: &Profile) -> usize {
        profile.orders().iter().fold(0usize, |acc, o| acc * self.radix() + o.lex_index() as usize)
    }

    pub fn digits_of(&self, mut index: u64, digits: &mut [usize]) {
        let r = self.radix() as u64;
        for d in digits.iter_mut().rev() {
            *d = (index % r) as usize;
            index /= r;
        }
    }

    pub fn profile_at(&self, index: u64) -> Profile {
        let mut digits = alloc::vec![0; self.voters];
        self.digits_of(index, &mut digits);
        self.profile_of_digits(&digits)
    }

    pub fn profile_of_digits(&self, digits: &[usize]) -> Profile {
        let orders = digits.iter().map(|&d| self.orders[d]).collect();
        Profile::new(self.domain, orders).expect("digits describe a valid profile")
    }

    /// Place value of voter `voter`'s digit.
    pub fn place(&self, voter: usize) -> usize {
        self.radix().pow((self.voters - 1 - voter) as u32)
    }
}

/// A rule given by its value at every profile of a fixed small domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRule {
    space: ProfileSpace,
    entries: Vec<Alternative>,
}

impl TableRule {
    pub fn new(domain: Domain, voters: usize, entries: Vec<Alternative>) -> Result<Self> {
        Self::with_limit(domain, voters, entries, DEFAULT_TABLE_LIMIT)
    }

    pub fn with_limit(domain: Domain, voters: usize, entries: Vec<Alternative>, limit: usize) -> Result<Self> {
        let expected = Self::table_len(domain, voters, limit)?;
        if entries.len() != expected {
            return Err(Error::TableSize { expected, got: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|a| !domain.contains(**a)) {
            return Err(Error::DomainMismatch { expected: domain.len(), got: bad.index() + 1 });
        }
        Ok(TableRule { space: ProfileSpace::new(domain, voters)?, entries })
    }

    /// Tabulates `f` over every profile of the domain.
    pub fn from_fn<F>(domain: Domain, voters: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Profile) -> Result<Alternative>,
    {
        let len = Self::table_len(domain, voters, DEFAULT_TABLE_LIMIT)?;
        let space = ProfileSpace::new(domain, voters)?;
        let entries = (0..len as u64).map(|i| f(&space.profile_at(i))).collect::<Result<Vec<_>>>()?;
        TableRule::new(domain, voters, entries)
    }

    /// `(m!)^n`, provided it stays within `limit`.
    pub fn table_len(domain: Domain, voters: usize, limit: usize) -> Result<usize> {
        if voters == 0 {
            return Err(Error::EmptyProfile);
        }
        domain
            .order_count()
            .and_then(|r| r.checked_pow(voters as u32))
            .filter(|&len| len <= limit as u64)
            .map(|len| len as usize)
            .ok_or(Error::TableTooLarge { limit })
    }

    pub fn domain(&self) -> &Domain {
        self.space.domain()
    }

    pub fn voters(&self) -> usize {
        self.space.voters()
    }

    pub fn space(&self) -> &ProfileSpace {
        &self.space
    }

    pub fn entries(&self) -> &[Alternative] {
        &self.entries
    }

    pub fn lookup(&self, index: usize) -> Alternative {
        self.entries[index]
    }
}
