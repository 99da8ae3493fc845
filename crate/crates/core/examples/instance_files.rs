//! Generating, serializing and parsing instance files.
//!
//! `cargo run --example instance_files`

use polyconj::format::{parse_instance, serialize_instance};
use polyconj::generate::{generate, GenSpec, Kind};
use polyconj::Result;

fn main() -> Result<()> {
    for kind in Kind::ALL {
        let file = generate(&GenSpec::new(kind, 3, 20, 7, true)?);
        let text = serialize_instance(&file);
        assert_eq!(parse_instance(&text)?, file);
        print!("{text}");
    }

    let annotated = "# three coefficients\ntssp\n3\n\n3 5 7\n-2\n";
    println!("{:?}", parse_instance(annotated)?.kind());

    match parse_instance("ssp\n2\n3 five\n8\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
