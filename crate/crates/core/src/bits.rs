//! Bitmask helpers for vertex and element sets (ground sets are capped well
//! below 128, so everything fits in a `u128`).

/// Iterator over the set bit positions of a mask, ascending.
pub fn ones(mask: u128) -> impl Iterator<Item = u32> {
    std::iter::successors(Some(mask), |&m| {
        let rest = m & m.wrapping_sub(1);
        (rest != 0).then_some(rest)
    })
    .take_while(|&m| m != 0)
    .map(|m| m.trailing_zeros())
}

pub fn mask_of(ids: &[u32]) -> u128 {
    ids.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

pub fn to_vec(mask: u128) -> Vec<u32> {
    ones(mask).collect()
}

pub fn bit(v: u32) -> u128 {
    1u128 << v
}

pub fn contains(mask: u128, v: u32) -> bool {
    mask >> v & 1 == 1
}

/// All-ones mask for `n` low bits.
pub fn full(n: usize) -> u128 {
    if n == 0 {
        0
    } else if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_roundtrip() {
        let mask = mask_of(&[0, 3, 17, 64, 127]);
        assert_eq!(to_vec(mask), vec![0, 3, 17, 64, 127]);
        assert_eq!(ones(0).count(), 0);
    }

    #[test]
    fn full_edges() {
        assert_eq!(full(0), 0);
        assert_eq!(full(3), 0b111);
        assert_eq!(full(128), u128::MAX);
    }
}
