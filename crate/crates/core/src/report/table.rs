use crate::counterexample::limit_constants;

/// One line per limit constant: name, closed form, binary64 value.
pub fn limits_table() -> String {
    let rows = limit_constants();
    let width = rows
        .iter()
        .map(|c| c.expression.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for c in &rows {
        let pad = width - c.expression.chars().count();
        out.push_str(&format!(
            "{:<11} {}{} {:>20}\n",
            c.name(),
            c.expression,
            " ".repeat(pad),
            c.value
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_lists_every_constant() {
        let t = limits_table();
        assert_eq!(t.lines().count(), 16);
        assert!(t.contains("0.7071067811865476"));
        assert!(t.contains("mu-X(1,1)"));
        assert_eq!(t, limits_table());
    }
}
