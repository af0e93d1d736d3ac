//! Boundary walk for the chain-of-bands surface of an expansion.
//!
//! The boundary of the plumbed band chain is the closure of the rational
//! tangle assembled from the expansion, so the walk traces that tangle.
//! Every twist box has four ports joined in pairs by two strands (straight
//! for an even number of half-twists, crossed for an odd number); the boxes
//! are joined port-to-port by wires. Each port carries one strand and one
//! wire, so the boundary is a disjoint union of strand/wire cycles.

const NONE: usize = usize::MAX;

struct PortGraph {
    strand: Vec<usize>,
    wire: Vec<usize>,
}

impl PortGraph {
    fn add_port(&mut self) -> usize {
        self.strand.push(NONE);
        self.wire.push(NONE);
        self.strand.len() - 1
    }

    fn join_strand(&mut self, a: usize, b: usize) {
        self.strand[a] = b;
        self.strand[b] = a;
    }

    fn join_wire(&mut self, a: usize, b: usize) {
        debug_assert!(self.wire[a] == NONE && self.wire[b] == NONE);
        self.wire[a] = b;
        self.wire[b] = a;
    }
}

/// Tangle endpoints in the order NW, NE, SW, SE.
type Ends = [usize; 4];

/// Counts the boundary circles of the band chain with the given twist counts.
pub(crate) fn boundary_components(entries: &[i64]) -> usize {
    let mut g = PortGraph { strand: Vec::new(), wire: Vec::new() };

    // The 0-tangle: two horizontal arcs.
    let ends: [usize; 4] = std::array::from_fn(|_| g.add_port());
    g.join_strand(ends[0], ends[1]);
    g.join_strand(ends[2], ends[3]);
    let mut ends: Ends = ends;

    for &a in entries.iter().rev() {
        // a - T: a box of |a| half-twists glued to the right-hand side.
        let (l0, l1, r0, r1) = (g.add_port(), g.add_port(), g.add_port(), g.add_port());
        if a % 2 == 0 {
            g.join_strand(l0, r0);
            g.join_strand(l1, r1);
        } else {
            g.join_strand(l0, r1);
            g.join_strand(l1, r0);
        }
        g.join_wire(ends[1], l0);
        g.join_wire(ends[3], l1);
        let [nw, _, sw, _] = ends;

        // 1 / T: quarter turn, NW -> NE -> SE -> SW -> NW.
        ends = [sw, nw, r1, r0];
    }

    // Denominator closure: NW to SW, NE to SE.
    g.join_wire(ends[0], ends[2]);
    g.join_wire(ends[1], ends[3]);

    let mut seen = vec![false; g.strand.len()];
    let mut circles = 0;
    for start in 0..g.strand.len() {
        if seen[start] {
            continue;
        }
        circles += 1;
        let mut at = start;
        loop {
            seen[at] = true;
            let across = g.strand[at];
            seen[across] = true;
            at = g.wire[across];
            if at == start {
                break;
            }
        }
    }
    circles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::cf_value;

    #[test]
    fn small_cases() {
        // Once-punctured torus, Möbius band, Hopf band.
        assert_eq!(boundary_components(&[2, 2]), 1);
        assert_eq!(boundary_components(&[3]), 1);
        assert_eq!(boundary_components(&[2]), 2);
        assert_eq!(boundary_components(&[4]), 2);
        assert_eq!(boundary_components(&[2, -2]), 1);
        assert_eq!(boundary_components(&[2, 2, 2]), 2);
    }

    fn sequences(len: usize, out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in [-5, -4, -3, -2, 2, 3, 4, 5] {
            cur.push(a);
            sequences(len, out, cur);
            cur.pop();
        }
    }

    /// The boundary is a knot exactly when the value's denominator is odd.
    #[test]
    fn agrees_with_denominator_parity() {
        for len in 1..=5 {
            let mut all = Vec::new();
            sequences(len, &mut all, &mut Vec::new());
            for e in all {
                let v = cf_value(&e).unwrap();
                let expected = if v.denom() % 2 != 0 { 1 } else { 2 };
                assert_eq!(boundary_components(&e), expected, "{e:?}");
                if e.iter().all(|a| a % 2 == 0) {
                    // Orientable: 2 - chi - b = n + 1 - b must be even.
                    assert_eq!((len + 1 - expected) % 2, 0, "{e:?}");
                }
            }
        }
    }
}
