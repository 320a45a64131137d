use std::io::Read;
use std::path::Path;

use leavitt_core::{family, Family, Graph};

/// Reads a graph from a file, standard input (`-`), or a family name such
/// as `matrix_rose(3,2)` when no file of that name exists.
pub fn load_graph(input: &str) -> Result<Graph, String> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading standard input: {e}"))?;
        s
    } else if Path::new(input).exists() {
        std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?
    } else {
        return match input.parse::<Family>() {
            Ok(f) => family(f).map_err(|e| e.to_string()),
            Err(_) => Err(format!("{input}: no such file and not a graph family")),
        };
    };
    text.parse::<Graph>().map_err(|e| format!("{input}: {e}"))
}
