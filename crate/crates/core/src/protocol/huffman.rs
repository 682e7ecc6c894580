use alloc::collections::BinaryHeap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::model::Rational;

/// Binary Huffman code for `weights`. Ties merge the subtree holding the
/// smallest symbol index first, so the code is deterministic. A single
/// symbol gets the empty word.
pub fn huffman_code(weights: &[Rational]) -> Vec<String> {
    let k = weights.len();
    let mut codes = vec![String::new(); k];
    if k <= 1 {
        return codes;
    }
    // Node ids: leaves 0..k, internal nodes after.
    let mut children: Vec<(usize, usize)> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(Rational, usize, usize)>> =
        weights.iter().enumerate().map(|(i, &w)| Reverse((w, i, i))).collect();
    while heap.len() > 1 {
        let Reverse((w0, k0, n0)) = heap.pop().unwrap();
        let Reverse((w1, k1, n1)) = heap.pop().unwrap();
        children.push((n0, n1));
        heap.push(Reverse((w0 + w1, k0.min(k1), k + children.len() - 1)));
    }
    let root = heap.pop().unwrap().0 .2;
    let mut stack = vec![(root, String::new())];
    while let Some((node, prefix)) = stack.pop() {
        if node < k {
            codes[node] = prefix;
            continue;
        }
        let (l, r) = children[node - k];
        let mut pl = prefix.clone();
        pl.push('0');
        let mut pr = prefix;
        pr.push('1');
        stack.push((l, pl));
        stack.push((r, pr));
    }
    codes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{entropy, to_f64};
    use crate::protocol::is_prefix_free;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn expected_len(w: &[Rational], c: &[String]) -> Rational {
        w.iter().zip(c).map(|(&p, s)| p * Rational::from_integer(s.len() as i128)).sum()
    }

    #[test]
    fn dyadic_weights_hit_entropy() {
        let w = [r(1, 2), r(1, 4), r(1, 8), r(1, 8)];
        let c = huffman_code(&w);
        assert!(is_prefix_free(&c));
        assert_eq!(expected_len(&w, &c), r(7, 4));
    }

    #[test]
    fn within_one_bit_and_deterministic() {
        let w = [r(1, 3), r(1, 3), r(1, 3), r(0, 1)];
        let c = huffman_code(&w);
        assert_eq!(c, huffman_code(&w));
        let l = to_f64(expected_len(&w, &c));
        let h = entropy(&w);
        assert!(l >= h - 1e-12 && l < h + 1.0);
    }

    #[test]
    fn single_symbol_is_empty() {
        assert_eq!(huffman_code(&[r(1, 1)]), vec![String::new()]);
    }
}
