use ecat::workbench::cli;

fn main() {
    let ex = cli::run(std::env::args_os());
    if ex.out.is_none() {
        print!("{}", ex.output);
    }
    std::process::exit(ex.exit_code);
}
