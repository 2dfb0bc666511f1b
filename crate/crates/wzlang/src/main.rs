fn main() {
    let out = wzlang::cli::run(std::env::args_os());
    print!("{}", out.render());
    std::process::exit(out.code);
}
