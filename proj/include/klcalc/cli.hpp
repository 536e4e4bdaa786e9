#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "klcalc/coxeter.hpp"

namespace cli {

struct RunConfig {
  std::string command;  // pd-table | verify | kl | cells | ext
  char type = 'A';
  int rank = 2;
  std::string format = "table";  // table | json | csv
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  int threads = 1;
  std::vector<std::string> checks;    // verify: restrict to these check names
  std::vector<std::string> elements;  // kl: the pair (y, w)
  std::string side = "twosided";      // cells
  std::string family;                 // ext
  std::optional<std::string> arg_x, arg_y;
  std::optional<int> arg_i, arg_j, arg_n;
};

// Exit codes: 0 success, 1 verification failure, 2 configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/*
  Element input syntax:
    - "e" for the identity;
    - generator labels separated by spaces, dots or commas ("1 2 1");
    - a compact digit string of labels ("121");
    - letters with s=1, t=2, ..., z=8 ("sts");
    - in type A, a digit string of length rank+1 that is a permutation of
      1..rank+1 is read as one-line notation ("3412").
  All inputs are normalized to the ShortLex form.
*/
coxeter::ElementIndex parse_element(const coxeter::CoxeterSystem& sys, const std::string& text);

std::vector<std::string> check_names();

}  // namespace cli
