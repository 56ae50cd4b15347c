//! ASCII chord diagrams: endpoints on a line, arcs drawn above it.

const STEP: usize = 4;

/// Nesting level of each chord: one more than the deepest chord inside it.
fn levels(pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| pairs[i].1 - pairs[i].0);
    let mut level = vec![0; pairs.len()];
    for &i in &order {
        let (a, b) = pairs[i];
        let inner = (0..pairs.len()).filter(|&j| a < pairs[j].0 && pairs[j].1 < b).map(|j| level[j]).max().unwrap_or(0);
        level[i] = inner + 1;
    }
    level
}

pub fn chord_diagram(pairs: &[(usize, usize)], points: usize) -> String {
    let width = STEP * points.saturating_sub(1) + 1;
    let level = levels(pairs);
    let top = level.iter().copied().max().unwrap_or(0);
    let mut rows = Vec::new();
    for r in (1..=top).rev() {
        let mut row = vec![' '; width];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let (x, y) = (STEP * a, STEP * b);
            if level[i] == r {
                row[x] = '.';
                row[y] = '.';
                for c in &mut row[x + 1..y] {
                    *c = '-';
                }
            } else if level[i] > r {
                row[x] = '|';
                row[y] = '|';
            }
        }
        rows.push(row.into_iter().collect::<String>().trim_end().to_string());
    }
    let mut base = String::new();
    for i in 0..points {
        let label = i.to_string();
        while base.len() < STEP * i {
            base.push(' ');
        }
        base.push_str(&label);
    }
    rows.push(base);
    rows.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_pair() {
        let d = chord_diagram(&[(0, 3), (1, 2)], 4);
        assert_eq!(d, ".-----------.\n|   .---.   |\n0   1   2   3");
    }

    #[test]
    fn side_by_side() {
        let d = chord_diagram(&[(0, 1), (2, 3)], 4);
        assert_eq!(d, ".---.   .---.\n0   1   2   3");
    }
}
