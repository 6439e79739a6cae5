//! Breadth-first closure of a generating set inside a finite group.

use std::collections::HashSet;
use std::hash::Hash;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("closure exceeded the cap of {cap} elements")]
pub struct CapExceeded {
    pub cap: usize,
}

/// Elements of the subgroup generated by `gens`, in breadth-first order from
/// `identity` (each element followed by its right products with the generators,
/// generators taken in the given order).
pub fn closure<E, M>(identity: E, gens: &[E], mut mul: M, cap: usize) -> Result<Vec<E>, CapExceeded>
where
    E: Copy + Eq + Hash,
    M: FnMut(&E, &E) -> E,
{
    let mut seen: HashSet<E> = HashSet::new();
    let mut order = vec![identity];
    seen.insert(identity);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y) {
                if order.len() >= cap {
                    return Err(CapExceeded { cap });
                }
                order.push(y);
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_closure() {
        let elems = closure(0u32, &[3], |a, b| (a + b) % 10, 100).unwrap();
        assert_eq!(elems, vec![0, 3, 6, 9, 2, 5, 8, 1, 4, 7]);
        assert_eq!(
            closure(0u32, &[3], |a, b| (a + b) % 10, 5),
            Err(CapExceeded { cap: 5 })
        );
    }
}
