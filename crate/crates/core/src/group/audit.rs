//! Direct check of `|H:H'| < |G:G'|` over every proper subgroup of a small
//! Baer group.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::baer::BaerGroup;
use crate::altmap::AlternatingMap;
use crate::{Error, Result};

/// `3^5`.
pub const DEFAULT_ORDER_CAP: u64 = 243;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub order: u64,
    pub subgroup_count: usize,
    /// `|G'|`.
    pub derived_order: u64,
    /// `|G:G'|`.
    pub abelianization_index: u64,
    /// Largest `|H:H'|` over proper subgroups `H` (1 when `G` is trivial).
    pub max_proper_index: u64,
    pub ab_maximal: bool,
    /// Order of one proper subgroup with `|H:H'| >= |G:G'|`, if any.
    pub violating_order: Option<u64>,
}

type Bits = Vec<u64>;

struct Table {
    order: usize,
    words: usize,
    mul: Vec<u16>,
}

impl Table {
    fn build(g: &BaerGroup) -> Table {
        let order = g.order() as usize;
        let elems: Vec<_> = (0..order).map(|c| g.decode(c)).collect();
        let mut mul = vec![0u16; order * order];
        for (a, x) in elems.iter().enumerate() {
            for (b, y) in elems.iter().enumerate() {
                mul[a * order + b] = g.encode(&g.mul(x, y)) as u16;
            }
        }
        Table { order, words: order.div_ceil(64), mul }
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    fn empty(&self) -> Bits {
        vec![0; self.words]
    }

    /// Subgroup generated by `gens` (finite, so closure under products suffices).
    fn closure(&self, gens: &[usize]) -> Bits {
        let mut bits = self.empty();
        set(&mut bits, 0);
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !get(&bits, y) {
                    set(&mut bits, y);
                    members.push(y);
                }
            }
            i += 1;
        }
        bits
    }

    fn inverse(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.mul(a, b) == 0).expect("group element has an inverse")
    }

    /// `|H'|` from all commutators of elements of `H`.
    fn derived_order(&self, h: &Bits) -> u64 {
        let members: Vec<usize> = (0..self.order).filter(|&x| get(h, x)).collect();
        let inv: Vec<usize> = members.iter().map(|&x| self.inverse(x)).collect();
        let mut comms = BTreeSet::new();
        for (ia, &a) in members.iter().enumerate() {
            for (ib, &b) in members.iter().enumerate() {
                let c = self.mul(self.mul(inv[ia], inv[ib]), self.mul(a, b));
                comms.insert(c);
            }
        }
        let gens: Vec<usize> = comms.into_iter().collect();
        popcount(&self.closure(&gens))
    }
}

#[inline]
fn get(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn popcount(bits: &Bits) -> u64 {
    bits.iter().map(|w| u64::from(w.count_ones())).sum()
}

/// Enumerates every subgroup of the exponent-`p` group built from `B` and
/// decides ab-maximality by definition.
pub fn audit_abmax(b: &AlternatingMap, order_cap: u64) -> Result<AuditReport> {
    let g = BaerGroup::new(b.clone())?;
    let order = g.order();
    if order > order_cap || order > u64::from(u16::MAX) {
        return Err(Error::OrderCapExceeded { order, cap: order_cap });
    }
    let table = Table::build(&g);

    // Cyclic subgroups, then joins with cyclic subgroups until nothing new appears.
    let mut cyclic: Vec<(usize, Bits)> = Vec::new();
    let mut seen: BTreeSet<Bits> = BTreeSet::new();
    for x in 1..table.order {
        let c = table.closure(&[x]);
        if seen.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    let trivial = table.closure(&[]);
    seen.insert(trivial.clone());
    let mut queue: Vec<(Vec<usize>, Bits)> = vec![(Vec::new(), trivial)];
    queue.extend(cyclic.iter().map(|(x, c)| (vec![*x], c.clone())));
    let mut subgroups: Vec<Bits> = Vec::new();
    while let Some((gens, bits)) = queue.pop() {
        for (x, _) in &cyclic {
            if get(&bits, *x) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(*x);
            let joined = table.closure(&next_gens);
            if seen.insert(joined.clone()) {
                queue.push((next_gens, joined));
            }
        }
        subgroups.push(bits);
    }

    let whole = popcount(&table.closure(&(1..table.order).collect::<Vec<_>>()));
    debug_assert_eq!(whole, order);
    let mut derived_order = 1;
    let mut max_proper_index = 1;
    let mut proper = Vec::new();
    for h in &subgroups {
        let size = popcount(h);
        let d = table.derived_order(h);
        if size == order {
            derived_order = d;
        } else {
            proper.push((size, size / d));
            max_proper_index = max_proper_index.max(size / d);
        }
    }
    let abelianization_index = order / derived_order;
    let violating_order = proper.iter().find(|&&(_, idx)| idx >= abelianization_index).map(|&(s, _)| s);
    Ok(AuditReport {
        order,
        subgroup_count: subgroups.len(),
        derived_order,
        abelianization_index,
        max_proper_index,
        ab_maximal: violating_order.is_none(),
        violating_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;

    #[test]
    fn heisenberg_is_not_ab_maximal() {
        let r = audit_abmax(&AlternatingMap::symplectic(Prime::THREE, 2).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(r.order, 27);
        assert_eq!(r.derived_order, 3);
        assert_eq!(r.abelianization_index, 9);
        // 1 trivial, 13 of order 3, 4 of order 9, whole group
        assert_eq!(r.subgroup_count, 19);
        assert!(!r.ab_maximal);
        assert_eq!(r.violating_order, Some(9));
    }

    #[test]
    fn extraspecial_243_is_ab_maximal() {
        let r = audit_abmax(&AlternatingMap::symplectic(Prime::THREE, 4).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(r.order, 243);
        assert_eq!(r.abelianization_index, 81);
        assert!(r.ab_maximal);
        assert_eq!(r.max_proper_index, 27);
    }

    #[test]
    fn elementary_abelian() {
        let r = audit_abmax(&AlternatingMap::zero(Prime::THREE, 3, 0), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(r.subgroup_count, 1 + 13 + 13 + 1);
        assert!(r.ab_maximal);
    }

    #[test]
    fn cap_and_prime_are_checked() {
        let b = AlternatingMap::symplectic(Prime::THREE, 4).unwrap();
        assert_eq!(audit_abmax(&b, 81), Err(Error::OrderCapExceeded { order: 243, cap: 81 }));
        assert!(audit_abmax(&AlternatingMap::symplectic(Prime::TWO, 2).unwrap(), 243).is_err());
    }
}
