pub mod io {}
