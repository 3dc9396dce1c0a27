use super::{FiniteGroup, GroupError};

fn build(
    order: usize,
    identity: usize,
    labels: Vec<String>,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteGroup, GroupError> {
    let table = (0..order)
        .map(|a| (0..order).map(|b| mul(a, b)).collect())
        .collect();
    FiniteGroup::from_table(table, identity, labels)
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// Cyclic group `C(n)` with elements `g^k`, `k = 0..n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("C(0)".into()));
    }
    let labels = (0..n).map(|k| power_label("g", k)).collect();
    build(n, 0, labels, |a, b| (a + b) % n)
}

/// Dihedral group `D(n)` of order `2n`. Element `e * n + k` is `r^k s^e`,
/// with `s r s = r^{-1}`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("D(0)".into()));
    }
    let labels = (0..2 * n)
        .map(|i| {
            let (e, k) = (i / n, i % n);
            match (e, k) {
                (0, _) => power_label("r", k),
                (_, 0) => "s".to_string(),
                _ => format!("{}s", power_label("r", k)),
            }
        })
        .collect();
    build(2 * n, 0, labels, |x, y| {
        let (e, a) = (x / n, x % n);
        let (f, b) = (y / n, y % n);
        // r^a s^e r^b s^f = r^(a + (-1)^e b) s^(e + f)
        let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
        ((e + f) % 2) * n + k
    })
}

/// Quaternion group in the order `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> Result<FiniteGroup, GroupError> {
    // Unit index u in {0:1, 1:i, 2:j, 3:k}; element 2u + sign.
    // unit_mul[u][v] = (sign, unit) of u*v.
    const UNIT_MUL: [[(u8, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    build(8, 0, labels, |x, y| {
        let (u, su) = (x / 2, (x % 2) as u8);
        let (v, sv) = (y / 2, (y % 2) as u8);
        let (s, w) = UNIT_MUL[u][v];
        2 * w + ((su + sv + s) % 2) as usize
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Lexicographic order of one-line notation.
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

fn is_even(perm: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

fn cycle_label(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = perm[i];
        }
        out.push('(');
        out.push_str(&cycle.join(if perm.len() > 9 { " " } else { "" }));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

fn permutation_group(perms: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
    use std::collections::HashMap;
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    let n = perms.len();
    // (a·b)(i) = a(b(i)): apply b first.
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let composed: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
                    index[composed.as_slice()]
                })
                .collect()
        })
        .collect();
    // The identity is first in lexicographic order.
    FiniteGroup::from_table(table, 0, labels)
}

/// Symmetric group `S(n)`; elements ordered lexicographically by one-line
/// notation and labelled in cycle notation.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("S(0)".into()));
    }
    permutation_group(permutations(n))
}

/// Alternating group `A(n)`: the even permutations of `S(n)`, same ordering.
pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("A(0)".into()));
    }
    permutation_group(permutations(n).into_iter().filter(|p| is_even(p)).collect())
}

/// Direct product; element `(a, b)` has index `a * |H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let m = h.order();
    let labels = g
        .labels()
        .iter()
        .flat_map(|a| h.labels().iter().map(move |b| format!("({a},{b})")))
        .collect();
    build(
        g.order() * m,
        g.identity() * m + h.identity(),
        labels,
        |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m),
    )
}
