//! Run a bundled preset and write its tables.
//! Usage: `cargo run --example presets -- fig11a [out-dir]`.

use std::path::PathBuf;

use ssh_channels::runner::{self, presets};

fn main() -> ssh_channels::Result<()> {
    let mut args = std::env::args().skip(1);
    let Some(name) = args.next() else {
        println!("presets: {}", presets::names().collect::<Vec<_>>().join(" "));
        return Ok(());
    };
    let dir = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("ssh-channels"));
    let out = runner::execute(presets::load(&name)?)?;
    for path in out.write(&dir)? {
        println!("{}", path.display());
    }
    println!("{}", out.summary);
    Ok(())
}
