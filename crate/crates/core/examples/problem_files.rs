//! Loading a JSON problem description and exporting a coefficient table, as
//! the command-line tool does.

use std::path::Path;

use wordseries::cli::{coefficient_table, write_table, CoeffsArgs, Format, Problem, TableKind};

fn main() -> wordseries::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/example2.json");
    let problem = Problem::load(&path)?;
    println!("{:?} problem with {} modes, defaults {:?}", problem.kind, problem.spec.modes().len(), problem.defaults);

    let args = CoeffsArgs {
        file: path,
        what: TableKind::Betabar,
        t: None,
        t0: None,
        theta: None,
        u: None,
        order: Some(2),
        format: Format::Csv,
        out: None,
    };
    let table = coefficient_table(&problem, &args)?;
    write_table(&table, Format::Csv, &mut std::io::stdout())
}
