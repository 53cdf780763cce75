// psicalc: products, commutators and residues of formal symbols from the
// command line. Every invocation prints one JSON document.

#include <iostream>

#include "CLI11.hpp"
#include "psicalc/dsl/commands.hpp"

namespace {

using psicalc::dsl::CommandRequest;

// Expressions such as "[A, B]" must not be read as bracketed lists.
void literal(CLI::Option* opt) { opt->allow_extra_args(false)->delimiter('\0'); }

void add_context_options(CLI::App* sub, CommandRequest& req) {
  sub->add_option("--ctx", req.ctx_path, "context file (JSON)")->required();
  sub->add_option("--floor", req.floor, "truncation floors 'm,n' (or 'm')");
}

void add_apply(CLI::App* sub, CommandRequest& req) {
  add_context_options(sub, req);
  sub->add_option("--u", req.u, "u as a JSON map frequency -> coefficient, e.g. '{\"1,0\":\"1/2\"}'")->required();
  literal(sub->add_option("expr", req.exprs, "symbol expression")->required()->expected(1));
}

void add_principal(CLI::App* sub, CommandRequest& req) {
  for (const char* name : {"b0", "b1", "b2", "b12"})
    sub->add_option(std::string("--") + name, req.bisingular[name], std::string("coefficient ") + name + " on the torus");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus of formal twisted pseudodifferential symbols"};
  app.require_subcommand(1);
  CommandRequest req;

  auto* mul = app.add_subcommand("mul", "product of one or more symbol expressions");
  add_context_options(mul, req);
  literal(mul->add_option("exprs", req.exprs, "symbol expressions, multiplied left to right")->required()->expected(1));
  mul->allow_extras();  // further factors arrive as extras

  auto* comm = app.add_subcommand("commutator", "[A, B] = AB - BA");
  add_context_options(comm, req);
  literal(comm->add_option("exprs", req.exprs, "two symbol expressions")->required()->expected(2));

  auto* res = app.add_subcommand("res", "residue of a symbol expression");
  add_context_options(res, req);
  res->add_option("--trace", req.trace, "trace selector, e.g. 11 or W2");
  literal(res->add_option("expr", req.exprs, "symbol expression")->required()->expected(1));

  auto* check = app.add_subcommand("check", "hypothesis report for a context");
  add_context_options(check, req);

  auto* apply = app.add_subcommand("apply", "apply a symbol to a trigonometric polynomial");
  add_apply(apply, req);

  auto* principal = app.add_subcommand("principal", "principal symbol of a bi-singular operator");
  add_principal(principal, req);

  auto* bising = app.add_subcommand("bising", "bi-singular operator toolkit");
  bising->require_subcommand(1);
  auto* bprincipal = bising->add_subcommand("principal", "principal symbol of a bi-singular operator");
  add_principal(bprincipal, req);
  auto* bapply = bising->add_subcommand("apply", "apply a quadrant symbol to a trigonometric polynomial");
  add_apply(bapply, req);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (mul->parsed())
    for (auto& extra : mul->remaining()) req.exprs.push_back(extra);
  for (auto* sub : {mul, comm, res, check, apply, principal})
    if (sub->parsed()) req.command = sub->get_name();
  if (bprincipal->parsed()) req.command = "principal";
  if (bapply->parsed()) req.command = "apply";
  // unset coefficients default to zero
  for (auto it = req.bisingular.begin(); it != req.bisingular.end();)
    it = it->second.empty() ? req.bisingular.erase(it) : std::next(it);

  const auto result = psicalc::dsl::run_command(req);
  std::cout << result.output;
  return result.exit_code;
}
