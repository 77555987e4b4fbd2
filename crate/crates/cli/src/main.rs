use std::process::ExitCode;

use sqbessel_cli::{execute, exit, parse_args, Parsed};

fn main() -> ExitCode {
    let code = match parse_args(std::env::args_os()) {
        Ok(Parsed::Run(config)) => execute(&config),
        Ok(Parsed::Info(text)) => {
            print!("{text}");
            exit::OK
        }
        Err(e) => {
            eprintln!("{e}");
            exit::USAGE
        }
    };
    ExitCode::from(code as u8)
}
