// SPDX-License-Identifier: Apache-2.0

//! Alternatives, linear orders, voter sets and profiles.
//!
//! Voters are 0-based everywhere in this crate. Text formats and reports
//! shift to 1-based numbering at their boundary.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported number of alternatives (one letter label each).
pub const MAX_ALTERNATIVES: usize = 26;

/// An alternative, identified by its position in a [`Domain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alternative(u8);

impl Alternative {
    pub const fn new(index: usize) -> Self {
        assert!(index < MAX_ALTERNATIVES);
        Alternative(index as u8)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// The set of alternatives on offer, labelled by distinct capital letters.
///
/// Labels are kept sorted, so the index order of alternatives agrees with the
/// alphabetical order of their labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Domain {
    len: u8,
    labels: [u8; MAX_ALTERNATIVES],
}

impl Domain {
    /// The domain `A, B, C, ...` with `m` alternatives.
    pub fn standard(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_ALTERNATIVES {
            return Err(Error::DomainSize(m));
        }
        let mut labels = [0u8; MAX_ALTERNATIVES];
        for (i, slot) in labels.iter_mut().enumerate().take(m) {
            *slot = b'A' + i as u8;
        }
        Ok(Domain { len: m as u8, labels })
    }

    pub fn from_labels(labels: &[char]) -> Result<Self> {
        if labels.is_empty() || labels.len() > MAX_ALTERNATIVES {
            return Err(Error::DomainSize(labels.len()));
        }
        let mut sorted = [0u8; MAX_ALTERNATIVES];
        for (slot, &c) in sorted.iter_mut().zip(labels) {
            if !c.is_ascii_uppercase() {
                return Err(Error::InvalidLabel(c));
            }
            *slot = c as u8;
        }
        let m = labels.len();
        sorted[..m].sort_unstable();
        if let Some(w) = sorted[..m].windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0] as char));
        }
        Ok(Domain { len: m as u8, labels: sorted })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, a: Alternative) -> bool {
        a.index() < self.len()
    }

    pub fn label(&self, a: Alternative) -> char {
        self.labels[a.index()] as char
    }

    pub fn labels(&self) -> impl Iterator<Item = char> + '_ {
        self.labels[..self.len()].iter().map(|&b| b as char)
    }

    pub fn alternative(&self, label: char) -> Option<Alternative> {
        let label = u8::try_from(label).ok()?;
        self.labels[..self.len()].iter().position(|&l| l == label).map(Alternative::new)
    }

    pub fn alternatives(&self) -> impl Iterator<Item = Alternative> {
        (0..self.len()).map(Alternative::new)
    }

    /// The domain with `x` removed; remaining alternatives are re-indexed.
    pub fn without(&self, x: Alternative) -> Result<Domain> {
        if !self.contains(x) || self.len() < 2 {
            return Err(Error::DomainSize(self.len().saturating_sub(1)));
        }
        let labels: Vec<char> = self.alternatives().filter(|&a| a != x).map(|a| self.label(a)).collect();
        Domain::from_labels(&labels)
    }

    /// `m!`, or `None` if it does not fit in a `u64`.
    pub fn order_count(&self) -> Option<u64> {
        (1..=self.len() as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
    }

    /// All linear orders over the domain in lexicographic order of their
    /// label sequences.
    pub fn orders(&self) -> Vec<LinearOrder> {
        let count = self.order_count().expect("domain too large to enumerate");
        (0..count).map(|i| LinearOrder::from_lex_index(self.len(), i).expect("index in range")).collect()
    }

    /// Parses `A > B > C` (whitespace-insensitive) or the compact `ABC`.
    pub fn parse_order(&self, text: &str) -> Result<LinearOrder> {
        let mut ranking = Vec::with_capacity(self.len());
        if text.contains('>') {
            for token in text.split('>') {
                let token = token.trim();
                let mut chars = token.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => ranking.push(self.lookup(c)?),
                    _ => return Err(Error::InvalidOrder("expected one label between '>'")),
                }
            }
        } else {
            for c in text.chars().filter(|c| !c.is_whitespace()) {
                ranking.push(self.lookup(c)?);
            }
        }
        if ranking.len() != self.len() {
            return Err(Error::DomainMismatch { expected: self.len(), got: ranking.len() });
        }
        LinearOrder::new(&ranking)
    }

    fn lookup(&self, c: char) -> Result<Alternative> {
        self.alternative(c).ok_or(Error::InvalidLabel(c))
    }

    /// `A > B > C`
    pub fn format_order(&self, order: &LinearOrder) -> String {
        let mut out = String::new();
        for (i, a) in order.iter().enumerate() {
            if i > 0 {
                out.push_str(" > ");
            }
            out.push(self.label(a));
        }
        out
    }

    /// `ABC`
    pub fn compact_order(&self, order: &LinearOrder) -> String {
        order.iter().map(|a| self.label(a)).collect()
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels()).finish()
    }
}

/// A strict ranking of every alternative in a domain, best first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    len: u8,
    ranking: [u8; MAX_ALTERNATIVES],
    rank: [u8; MAX_ALTERNATIVES],
}

impl LinearOrder {
    pub fn new(ranking: &[Alternative]) -> Result<Self> {
        let m = ranking.len();
        if m == 0 || m > MAX_ALTERNATIVES {
            return Err(Error::DomainSize(m));
        }
        let mut order = LinearOrder { len: m as u8, ranking: [0; MAX_ALTERNATIVES], rank: [u8::MAX; MAX_ALTERNATIVES] };
        for (pos, &a) in ranking.iter().enumerate() {
            if a.index() >= m {
                return Err(Error::InvalidOrder("alternative outside the domain"));
            }
            if order.rank[a.index()] != u8::MAX {
                return Err(Error::InvalidOrder("alternative ranked twice"));
            }
            order.ranking[pos] = a.0;
            order.rank[a.index()] = pos as u8;
        }
        Ok(order)
    }

    /// `A > B > C > ...`
    pub fn identity(m: usize) -> Result<Self> {
        let ranking: Vec<Alternative> = (0..m).map(Alternative::new).collect();
        LinearOrder::new(&ranking)
    }

    /// Inverse of [`LinearOrder::lex_index`].
    pub fn from_lex_index(m: usize, mut index: u64) -> Option<Self> {
        if m == 0 || m > 20 {
            return None;
        }
        let mut factorials = [1u64; 21];
        for k in 1..=20 {
            factorials[k] = factorials[k - 1] * k as u64;
        }
        if index >= factorials[m] {
            return None;
        }
        let mut remaining: Vec<Alternative> = (0..m).map(Alternative::new).collect();
        let mut ranking = Vec::with_capacity(m);
        for pos in 0..m {
            let f = factorials[m - 1 - pos];
            let digit = (index / f) as usize;
            index %= f;
            ranking.push(remaining.remove(digit));
        }
        LinearOrder::new(&ranking).ok()
    }

    /// Position of this order in the lexicographic enumeration of all orders
    /// over the same domain (Lehmer code). Defined for up to 20 alternatives.
    pub fn lex_index(&self) -> u64 {
        let m = self.len();
        assert!(m <= 20, "lex_index supports at most 20 alternatives");
        let mut index = 0u64;
        let mut used = 0u32;
        for pos in 0..m {
            let a = self.ranking[pos] as u32;
            let smaller_unused = (0..a).filter(|&b| used & (1 << b) == 0).count() as u64;
            index = index * (m - pos) as u64 + smaller_unused;
            used |= 1 << a;
        }
        index
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Alternative at position `pos` (0 = most preferred).
    pub fn at(&self, pos: usize) -> Alternative {
        assert!(pos < self.len());
        Alternative(self.ranking[pos])
    }

    /// Position of `a` (0 = most preferred).
    pub fn position(&self, a: Alternative) -> usize {
        assert!(a.index() < self.len());
        self.rank[a.index()] as usize
    }

    pub fn top(&self) -> Alternative {
        self.at(0)
    }

    pub fn bottom(&self) -> Alternative {
        self.at(self.len() - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = Alternative> + '_ {
        self.ranking[..self.len()].iter().map(|&b| Alternative(b))
    }

    /// `x` is ranked strictly above `y`.
    pub fn prefers(&self, x: Alternative, y: Alternative) -> bool {
        self.position(x) < self.position(y)
    }

    pub fn compare(&self, x: Alternative, y: Alternative) -> GroupPreference {
        group_prefers(self, x, y)
    }
}

impl Ord for LinearOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.ranking[..self.len()].cmp(&other.ranking[..other.len()]))
    }
}

impl PartialOrd for LinearOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Letters of the standard domain; domain-aware output goes through
        // `Domain::format_order`.
        for a in self.iter() {
            write!(f, "{}", (b'A' + a.0) as char)?;
        }
        Ok(())
    }
}

/// Result of comparing two alternatives for a group of like-minded voters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupPreference {
    /// Every member ranks `x` above `y`.
    Strict,
    /// `x` and `y` are the same alternative.
    Weak,
    /// Every member ranks `y` above `x`.
    No,
}

impl GroupPreference {
    pub fn is_strict(self) -> bool {
        self == GroupPreference::Strict
    }

    /// `x` is ranked no lower than `y`.
    pub fn is_weak(self) -> bool {
        self != GroupPreference::No
    }
}

/// Compares `x` and `y` for a group of voters that all hold `type_order`.
pub fn group_prefers(type_order: &LinearOrder, x: Alternative, y: Alternative) -> GroupPreference {
    match type_order.position(x).cmp(&type_order.position(y)) {
        Ordering::Less => GroupPreference::Strict,
        Ordering::Equal => GroupPreference::Weak,
        Ordering::Greater => GroupPreference::No,
    }
}

/// A sorted set of (0-based) voter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoterSet(Vec<usize>);

impl VoterSet {
    pub fn new<I: IntoIterator<Item = usize>>(voters: I) -> Self {
        let mut v: Vec<usize> = voters.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VoterSet(v)
    }

    pub fn empty() -> Self {
        VoterSet(Vec::new())
    }

    pub fn single(voter: usize) -> Self {
        VoterSet(alloc::vec![voter])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, voter: usize) -> bool {
        self.0.binary_search(&voter).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &VoterSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_proper_subset(&self, other: &VoterSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &VoterSet) -> VoterSet {
        VoterSet::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &VoterSet) -> VoterSet {
        VoterSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    /// Indices shifted to the 1-based numbering used in reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// Orders by size first, then lexicographically by members.
    pub fn canonical_cmp(&self, other: &VoterSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl FromIterator<usize> for VoterSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VoterSet::new(iter)
    }
}

/// A sequence of sincere (or reported) linear orders, one per voter, with a
/// grouped view mapping each type to the voters holding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    domain: Domain,
    orders: Vec<LinearOrder>,
    groups: BTreeMap<LinearOrder, VoterSet>,
}

impl Profile {
    pub fn new(domain: Domain, orders: Vec<LinearOrder>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if let Some(bad) = orders.iter().find(|o| o.len() != domain.len()) {
            return Err(Error::DomainMismatch { expected: domain.len(), got: bad.len() });
        }
        let groups = group(&orders);
        Ok(Profile { domain, orders, groups })
    }

    /// Expands a multiset of types into voters, numbered in the given order.
    pub fn from_counts(domain: Domain, counts: &[(LinearOrder, usize)]) -> Result<Self> {
        let mut seen = BTreeMap::new();
        let mut orders = Vec::new();
        for (order, count) in counts {
            if seen.insert(*order, ()).is_some() {
                return Err(Error::DuplicateType(domain.compact_order(order)));
            }
            orders.extend(core::iter::repeat_n(*order, *count));
        }
        Profile::new(domain, orders)
    }

    /// `n` voters all holding `order`.
    pub fn completely_agreed(domain: Domain, order: LinearOrder, n: usize) -> Result<Self> {
        Profile::new(domain, alloc::vec![order; n])
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Number of voters.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn order(&self, voter: usize) -> &LinearOrder {
        &self.orders[voter]
    }

    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    /// Types present, in lexicographic order, with their voters.
    pub fn groups(&self) -> impl Iterator<Item = (&LinearOrder, &VoterSet)> {
        self.groups.iter()
    }

    pub fn type_counts(&self) -> Vec<(LinearOrder, usize)> {
        self.groups.iter().map(|(o, v)| (*o, v.len())).collect()
    }

    /// The voters whose order is exactly `order` (possibly none).
    pub fn voters_of_type(&self, order: &LinearOrder) -> Result<VoterSet> {
        if order.len() != self.domain.len() {
            return Err(Error::DomainMismatch { expected: self.domain.len(), got: order.len() });
        }
        Ok(self.groups.get(order).cloned().unwrap_or_default())
    }

    /// Every voter sharing `voter`'s order, `voter` included.
    pub fn class_of(&self, voter: usize) -> &VoterSet {
        &self.groups[&self.orders[voter]]
    }

    pub fn is_completely_agreed(&self) -> bool {
        self.groups.len() == 1
    }

    /// The profile with every voter of the like-minded set `voters` switched
    /// to `order`, all else unchanged.
    pub fn switch_votes(&self, voters: &VoterSet, order: &LinearOrder) -> Result<Profile> {
        let mut members = voters.iter();
        if let Some(first) = members.next() {
            self.check_voter(first)?;
            let kind = self.orders[first];
            for v in members {
                self.check_voter(v)?;
                if self.orders[v] != kind {
                    return Err(Error::MixedTypes);
                }
            }
            if kind == *order {
                return Err(Error::SameOrder);
            }
        }
        self.replace_votes(voters, order)
    }

    /// Like [`Profile::switch_votes`] without the like-mindedness
    /// precondition: any listed voter now holds `order`.
    pub fn replace_votes(&self, voters: &VoterSet, order: &LinearOrder) -> Result<Profile> {
        if order.len() != self.domain.len() {
            return Err(Error::DomainMismatch { expected: self.domain.len(), got: order.len() });
        }
        let mut orders = self.orders.clone();
        for v in voters.iter() {
            self.check_voter(v)?;
            orders[v] = *order;
        }
        let edited = Profile { domain: self.domain, groups: group(&orders), orders };
        debug_assert!(edited.groups_consistent());
        Ok(edited)
    }

    /// Voter `i` of the result is voter `permutation[i]` of `self`.
    pub fn permuted(&self, permutation: &[usize]) -> Result<Profile> {
        if permutation.len() != self.len() {
            return Err(Error::VoterCountMismatch { expected: self.len(), got: permutation.len() });
        }
        let mut seen = alloc::vec![false; self.len()];
        let mut orders = Vec::with_capacity(self.len());
        for &p in permutation {
            self.check_voter(p)?;
            if core::mem::replace(&mut seen[p], true) {
                return Err(Error::VoterOutOfRange(p));
            }
            orders.push(self.orders[p]);
        }
        Profile::new(self.domain, orders)
    }

    /// Regenerates the grouped view from the per-voter orders and compares.
    pub fn groups_consistent(&self) -> bool {
        let total: usize = self.groups.values().map(VoterSet::len).sum();
        total == self.len() && group(&self.orders) == self.groups
    }

    fn check_voter(&self, voter: usize) -> Result<()> {
        if voter < self.len() {
            Ok(())
        } else {
            Err(Error::VoterOutOfRange(voter))
        }
    }
}

fn group(orders: &[LinearOrder]) -> BTreeMap<LinearOrder, VoterSet> {
    let mut groups: BTreeMap<LinearOrder, Vec<usize>> = BTreeMap::new();
    for (i, o) in orders.iter().enumerate() {
        groups.entry(*o).or_default().push(i);
    }
    groups.into_iter().map(|(o, v)| (o, VoterSet(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn abc() -> Domain {
        Domain::standard(3).unwrap()
    }

    fn order(s: &str) -> LinearOrder {
        abc().parse_order(s).unwrap()
    }

    // Plurality puzzle: voters 1 and 2 each gain alone but not together.
    fn example1() -> Profile {
        Profile::new(abc(), vec![order("ABC"), order("BAC"), order("CAB"), order("CBA")]).unwrap()
    }

    fn example2() -> Profile {
        Profile::new(abc(), vec![order("ABC"), order("ABC"), order("BCA"), order("CBA")]).unwrap()
    }

    #[test]
    fn voters_of_type_examples() {
        assert_eq!(example1().voters_of_type(&order("ABC")).unwrap(), VoterSet::single(0));
        assert_eq!(example2().voters_of_type(&order("ABC")).unwrap(), VoterSet::new([0, 1]));
        assert!(example2().voters_of_type(&order("BAC")).unwrap().is_empty());
    }

    #[test]
    fn voters_of_type_rejects_foreign_domain() {
        let four = LinearOrder::identity(4).unwrap();
        assert!(matches!(example1().voters_of_type(&four), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn switch_single_voter() {
        let p = example2().switch_votes(&VoterSet::single(0), &order("ACB")).unwrap();
        assert_eq!(*p.order(0), order("ACB"));
        assert_eq!(&p.orders()[1..], &example2().orders()[1..]);
        assert!(p.groups_consistent());
    }

    #[test]
    fn switch_empty_set_is_identity() {
        let p = example2();
        assert_eq!(p.switch_votes(&VoterSet::empty(), &order("ACB")).unwrap(), p);
    }

    #[test]
    fn switch_errors() {
        let p = example2();
        assert_eq!(p.switch_votes(&VoterSet::new([0, 2]), &order("ACB")), Err(Error::MixedTypes));
        assert_eq!(p.switch_votes(&VoterSet::new([0, 1]), &order("ABC")), Err(Error::SameOrder));
        assert_eq!(p.switch_votes(&VoterSet::new([7]), &order("ACB")), Err(Error::VoterOutOfRange(7)));
    }

    #[test]
    fn replace_is_idempotent() {
        let p = example2();
        let v = VoterSet::new([0, 1]);
        let once = p.switch_votes(&v, &order("ACB")).unwrap();
        assert_eq!(once.replace_votes(&v, &order("ACB")).unwrap(), once);
    }

    #[test]
    fn group_preference() {
        let o = order("ABC");
        let (a, b, c) = (Alternative::new(0), Alternative::new(1), Alternative::new(2));
        assert_eq!(group_prefers(&o, a, c), GroupPreference::Strict);
        assert_eq!(group_prefers(&o, b, b), GroupPreference::Weak);
        assert!(!group_prefers(&o, b, b).is_strict());
        let five = Domain::standard(5).unwrap();
        let abcde = five.parse_order("ABCDE").unwrap();
        assert!(group_prefers(&abcde, Alternative::new(1), Alternative::new(4)).is_strict());
    }

    #[test]
    fn lex_index_round_trip() {
        let d = Domain::standard(4).unwrap();
        let orders = d.orders();
        assert_eq!(orders.len(), 24);
        for (i, o) in orders.iter().enumerate() {
            assert_eq!(o.lex_index(), i as u64);
        }
        assert!(orders.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(d.compact_order(&orders[0]), "ABCD");
        assert_eq!(d.compact_order(&orders[23]), "DCBA");
    }

    #[test]
    fn parse_orders() {
        let d = abc();
        assert_eq!(d.parse_order(" C>A >  B").unwrap(), order("CAB"));
        assert_eq!(d.format_order(&order("CAB")), "C > A > B");
        assert!(d.parse_order("A > A > B").is_err());
        assert!(d.parse_order("A > B").is_err());
        assert!(d.parse_order("A > B > D").is_err());
        assert!(d.parse_order("AB > C").is_err());
    }

    #[test]
    fn domains() {
        let d = Domain::from_labels(&['C', 'A', 'B']).unwrap();
        assert_eq!(d, abc());
        assert_eq!(Domain::from_labels(&['A', 'A']), Err(Error::DuplicateLabel('A')));
        assert_eq!(Domain::from_labels(&['a']), Err(Error::InvalidLabel('a')));
        let minus_b = abc().without(Alternative::new(1)).unwrap();
        assert_eq!(minus_b.labels().collect::<String>(), "AC");
        assert_eq!(minus_b.alternative('C'), Some(Alternative::new(1)));
    }

    #[test]
    fn counts_expand_in_order() {
        let p = Profile::from_counts(abc(), &[(order("BAC"), 2), (order("ABC"), 1)]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(*p.order(2), order("ABC"));
        assert_eq!(p.type_counts(), vec![(order("ABC"), 1), (order("BAC"), 2)]);
        assert!(matches!(
            Profile::from_counts(abc(), &[(order("ABC"), 1), (order("ABC"), 2)]),
            Err(Error::DuplicateType(_))
        ));
        assert_eq!(Profile::from_counts(abc(), &[]), Err(Error::EmptyProfile));
    }
}
