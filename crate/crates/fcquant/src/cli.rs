//! Command-line surface (placeholder while the library is under construction).

pub fn run<I: Iterator<Item = String>>(_args: I) -> i32 {
    eprintln!("not yet wired");
    1
}
