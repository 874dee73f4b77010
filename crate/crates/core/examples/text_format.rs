//! Reading and writing the plain text container format, and driving the
//! command line entry point in-process.

use coarsemet::text::Workspace;

const INPUT: &str = "\
ground X labels a b c
relation Near over X
a b
b a
end
structure S over X generated by Near
";

fn main() -> coarsemet::Result<()> {
    let ws = Workspace::parse(INPUT)?;
    let s = &ws.structure("S")?.structure;
    println!("S has {} classes", s.classes().len());
    print!("{}", ws.to_text());

    let dir = std::env::temp_dir().join("coarsemet-example.txt");
    std::fs::write(&dir, INPUT).expect("temp dir is writable");
    let args = ["coarsemet", "saturate", "--in", dir.to_str().unwrap(), "--structure", "S"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = coarsemet::cli::run(args.iter().map(|a| a.to_string()), &mut out, &mut err);
    println!("exit {code}");
    print!("{}", String::from_utf8_lossy(&out));
    Ok(())
}
