//! Angle-label-preserving isomorphism of polyhedra (face names ignored).

use super::AngledPolyhedron;
use std::collections::BTreeMap;

/// Per-face invariant refined Weisfeiler–Leman style: start from the sorted
/// multiset of incident angle labels, then twice fold in neighbor classes.
fn color_classes(p: &AngledPolyhedron) -> Vec<u64> {
    let n = p.face_count();
    let mut color: Vec<u64> = (0..n)
        .map(|i| {
            let mut labels: Vec<u32> = (0..n)
                .filter_map(|j| p.edge_angle(i, j))
                .collect();
            labels.sort_unstable();
            hash_seq(labels.iter().map(|&x| x as u64))
        })
        .collect();
    for _ in 0..2 {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut nb: Vec<(u64, u64)> = (0..n)
                .filter_map(|j| p.edge_angle(i, j).map(|a| (a as u64, color[j])))
                .collect();
            nb.sort_unstable();
            let mut seq = vec![color[i]];
            for (a, c) in nb {
                seq.push(a);
                seq.push(c);
            }
            next.push(hash_seq(seq.into_iter()));
        }
        color = next;
    }
    color
}

fn hash_seq(it: impl Iterator<Item = u64>) -> u64 {
    // FNV-1a over the u64 stream
    let mut h: u64 = 0xcbf29ce484222325;
    for v in it {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

pub fn isomorphic(a: &AngledPolyhedron, b: &AngledPolyhedron) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A face bijection (indexed a -> b) preserving adjacency and angle labels,
/// if one exists.
pub fn find_isomorphism(a: &AngledPolyhedron, b: &AngledPolyhedron) -> Option<Vec<usize>> {
    find_isomorphism_forced(a, b, &[])
}

/// Like [`find_isomorphism`] but with some face images pinned in advance.
pub fn find_isomorphism_forced(
    a: &AngledPolyhedron,
    b: &AngledPolyhedron,
    forced: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let n = a.face_count();
    if n != b.face_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let ca = color_classes(a);
    let cb = color_classes(b);
    let mut hist_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_insert(0) += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_insert(0) += 1;
    }
    if hist_a != hist_b {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(i, j) in forced {
        if i >= n || j >= n || (image[i] != usize::MAX && image[i] != j) || used[j] {
            return None;
        }
        image[i] = j;
        used[j] = true;
    }
    // check forced pairs against each other
    for &(i, _) in forced {
        for &(i2, _) in forced {
            if a.edge_angle(i, i2) != b.edge_angle(image[i], image[i2]) {
                return None;
            }
        }
    }
    // order a's remaining faces: rarest color class first for early pruning
    let mut order: Vec<usize> = (0..n).filter(|&i| image[i] == usize::MAX).collect();
    order.sort_by_key(|&i| (hist_a[&ca[i]], i));

    fn extend(
        k: usize,
        order: &[usize],
        a: &AngledPolyhedron,
        b: &AngledPolyhedron,
        ca: &[u64],
        cb: &[u64],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let i = order[k];
        let n = a.face_count();
        for j in 0..b.face_count() {
            if used[j] || cb[j] != ca[i] {
                continue;
            }
            // consistency with everything already mapped (incl. forced)
            let ok = (0..n).all(|i2| {
                image[i2] == usize::MAX || a.edge_angle(i, i2) == b.edge_angle(j, image[i2])
            });
            if !ok {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if extend(k + 1, order, a, b, ca, cb, image, used) {
                return true;
            }
            image[i] = usize::MAX;
            used[j] = false;
        }
        false
    }

    if extend(0, &order, a, b, &ca, &cb, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::format::parse_text;

    #[test]
    fn relabeled_prisms_match() {
        let p1 = parse_text(
            "face t\nface a\nface b\nface c\nface u\n\
             edge t a 2\nedge t b 2\nedge t c 2\nedge u a 2\nedge u b 2\nedge u c 2\n\
             edge a b 4\nedge b c 4\nedge c a 4\n",
        )
        .unwrap();
        let p2 = parse_text(
            "face x\nface y\nface z\nface w\nface v\n\
             edge v x 4\nedge x w 4\nedge w v 4\n\
             edge y v 2\nedge y x 2\nedge y w 2\nedge z v 2\nedge z x 2\nedge z w 2\n",
        )
        .unwrap();
        assert!(isomorphic(&p1, &p2));
    }

    #[test]
    fn angle_labels_distinguish() {
        let p1 = parse_text(
            "face t\nface a\nface b\nface c\nface u\n\
             edge t a 2\nedge t b 2\nedge t c 2\nedge u a 2\nedge u b 2\nedge u c 2\n\
             edge a b 4\nedge b c 4\nedge c a 4\n",
        )
        .unwrap();
        let p2 = parse_text(
            "face t\nface a\nface b\nface c\nface u\n\
             edge t a 2\nedge t b 2\nedge t c 2\nedge u a 2\nedge u b 2\nedge u c 2\n\
             edge a b 4\nedge b c 4\nedge c a 5\n",
        )
        .unwrap();
        assert!(!isomorphic(&p1, &p2));
    }

    #[test]
    fn asymmetric_labels_need_correct_pairing() {
        // a prism with one cap's angles twisted: (3,2,2) vs (2,3,2) around
        // the circuit -- isomorphic to itself re-read in rotated labels
        let p1 = parse_text(
            "face t\nface a\nface b\nface c\nface u\n\
             edge t a 3\nedge t b 2\nedge t c 2\nedge u a 2\nedge u b 3\nedge u c 2\n\
             edge a b 5\nedge b c 5\nedge c a 5\n",
        )
        .unwrap();
        let p2 = parse_text(
            "face t\nface a\nface b\nface c\nface u\n\
             edge t a 2\nedge t b 3\nedge t c 2\nedge u a 2\nedge u b 2\nedge u c 3\n\
             edge a b 5\nedge b c 5\nedge c a 5\n",
        )
        .unwrap();
        assert!(isomorphic(&p1, &p2));
    }
}
