//! Monomial arithmetic in a finitely generated Grassmann algebra.
//!
//! A monomial `e_{i1} ⋯ e_{ik}` with `i1 < ⋯ < ik` is stored as the bitmask of
//! its indices; bit `i` stands for the generator `e_{i+1}`.

/// Product of two monomials: `None` when they share a generator, otherwise
/// the resulting mask and whether the reordering sign is negative.
pub fn mono_mul(a: usize, b: usize) -> Option<(usize, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // generators of `a` sitting to the right of e_j after concatenation
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((a | b, swaps % 2 == 1))
}

/// Left derivative `∂/∂e_i` of a monomial: move `e_i` to the front, then
/// strike it.
pub fn left_derivative(a: usize, i: usize) -> Option<(usize, bool)> {
    if a & (1 << i) == 0 {
        return None;
    }
    let before = (a & ((1 << i) - 1)).count_ones();
    Some((a & !(1 << i), before % 2 == 1))
}

pub fn degree(a: usize) -> u32 {
    a.count_ones()
}

/// Human-readable name, `1` for the empty monomial.
pub fn mono_label(a: usize) -> String {
    if a == 0 {
        return "1".into();
    }
    (0..usize::BITS as usize).filter(|i| a & (1 << i) != 0).map(|i| format!("e{}", i + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutation() {
        // e1 e2 = e1e2, e2 e1 = -e1e2
        assert_eq!(mono_mul(0b01, 0b10), Some((0b11, false)));
        assert_eq!(mono_mul(0b10, 0b01), Some((0b11, true)));
        assert_eq!(mono_mul(0b01, 0b01), None);
        assert_eq!(mono_mul(0, 0b101), Some((0b101, false)));
    }

    #[test]
    fn associativity_of_signs() {
        for a in 0..16usize {
            for b in 0..16usize {
                for c in 0..16usize {
                    let left = mono_mul(a, b).and_then(|(ab, s)| mono_mul(ab, c).map(|(m, t)| (m, s ^ t)));
                    let right = mono_mul(b, c).and_then(|(bc, s)| mono_mul(a, bc).map(|(m, t)| (m, s ^ t)));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn derivative_signs() {
        // ∂/∂e2 (e1 e2) = -e1
        assert_eq!(left_derivative(0b11, 1), Some((0b01, true)));
        assert_eq!(left_derivative(0b11, 0), Some((0b10, false)));
        assert_eq!(left_derivative(0b10, 0), None);
        assert_eq!(mono_label(0b101), "e1e3");
    }
}
