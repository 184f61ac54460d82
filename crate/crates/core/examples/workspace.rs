//! Load a JSON workspace and run a command on it, as the CLI does.

use presheaf_topos::audit::{run, Command};
use presheaf_topos::workspace::{Workspace, WorkspaceFile};

const GRAPHS: &str = r#"{
  "generator": {"kind": "gamma"},
  "ideals": {"I'": {"N": ["id_N"], "A": ["s", "t"]}}
}"#;

fn main() -> presheaf_topos::Result<()> {
    let ws = Workspace::from_file(&WorkspaceFile::parse(GRAPHS)?, &[])?;
    for line in ["ideals", "ideal-audit I'", "demorgan j^I'"] {
        let report = run(&ws, &Command::parse(line)?)?;
        print!("{}", report.to_text());
    }
    println!("{}", ws.to_file().to_json());
    Ok(())
}
