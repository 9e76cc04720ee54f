//! Shared inputs for the criterion benches.

use std::fmt::Write;

/// The oracle corpus used by the equivalence tests.
pub const CORPUS: &str = include_str!("../../../fixtures/corpus/Corpus.java");

/// A class with `methods` copies of a method that every rule applies to.
pub fn synthetic_class(methods: usize) -> String {
    let mut src = String::from("public class Synthetic {\n\n");
    for i in 0..methods {
        writeln!(
            src,
            "    static int m{i}(int n, String s, boolean p) {{
        int total = 0;
        int k = {i};
        for (int j = 0; j < n && j < 20; j = j + 1) {{
            if (p) {{
                total = total + j;
            }} else {{
                total = total - k;
            }}
        }}
        int len = s.concat(\"x\").substring(1).length();
        String tag = p ? \"on\" : \"off\";
        if (n == 1) {{
            total = total + 10;
        }} else if (n == 2) {{
            total = total + 20;
        }} else {{
            total = total + len;
        }}
        return total + Math.max(len, tag.length());
    }}
"
        )
        .expect("writing to a String");
    }
    src.push_str("}\n");
    src
}
