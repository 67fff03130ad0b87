use super::BraidWord;

/// Longest word drawn by [`render_diagram`].
pub const DIAGRAM_MAX_LETTERS: usize = 20;

const SPACING: usize = 4;

/// ASCII wire diagram, read top to bottom from the start of the strands.
/// Each letter takes three rows; a positive crossing shows `/` in the
/// middle row, a negative one `\`. Returns `None` for words longer than
/// [`DIAGRAM_MAX_LETTERS`].
pub fn render_diagram(w: &BraidWord) -> Option<String> {
    if w.len() > DIAGRAM_MAX_LETTERS {
        return None;
    }
    let n = w.strands();
    let width = if n == 0 { 0 } else { (n - 1) * SPACING + 1 };
    let blank_row = || {
        let mut row = vec![b' '; width];
        for s in 0..n {
            row[s * SPACING] = b'|';
        }
        row
    };
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut header = vec![b' '; width];
    for s in 0..n {
        let label = ((s + 1) % 10).to_string();
        header[s * SPACING] = label.as_bytes()[0];
    }
    rows.push(header);
    for &l in w.letters().iter().rev() {
        let a = (l.unsigned_abs() as usize - 1) * SPACING;
        let mut r1 = blank_row();
        let mut r2 = blank_row();
        let mut r3 = blank_row();
        for r in [&mut r1, &mut r2, &mut r3] {
            r[a] = b' ';
            r[a + SPACING] = b' ';
        }
        r1[a + 1] = b'\\';
        r1[a + 3] = b'/';
        r2[a + 2] = if l > 0 { b'/' } else { b'\\' };
        r3[a + 1] = b'/';
        r3[a + 3] = b'\\';
        rows.extend([r1, r2, r3]);
    }
    rows.push(blank_row());
    let lines: Vec<String> =
        rows.into_iter().map(|r| String::from_utf8(r).expect("ascii").trim_end().to_string()).collect();
    Some(lines.join("\n") + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_crossing() {
        let w = BraidWord::new(2, vec![1]).unwrap();
        let d = render_diagram(&w).unwrap();
        assert_eq!(d, "1   2\n \\ /\n  /\n / \\\n|   |\n");
    }

    #[test]
    fn long_words_are_not_drawn() {
        let w = BraidWord::new(2, vec![1; 21]).unwrap();
        assert!(render_diagram(&w).is_none());
    }
}
