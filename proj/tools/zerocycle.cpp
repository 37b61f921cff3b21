#include "zerocycle/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
	CLI::App app{"Tangential center solver for 0-dimensional abelian integrals"};
	std::string input, command = "analyze", g, format = "json";
	std::optional<int> samples, degree_bound;
	std::optional<double> tol;
	std::optional<uint64_t> seed;
	std::optional<size_t> element_cap;
	app.add_option("--input", input, "problem file (JSON)")->required();
	app.add_option("--command", command, "analyze | solve | verify | oracle")
	    ->check(CLI::IsMember({"analyze", "solve", "verify", "oracle"}));
	app.add_option("--g", g, "polynomial to verify, coefficients lowest degree first (\"0,1\" or JSON array)");
	app.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));
	app.add_option("--samples", samples, "oracle sample points");
	app.add_option("--tol", tol, "oracle membership tolerance");
	app.add_option("--seed", seed, "seed for sample points and sampled members");
	app.add_option("--degree-bound", degree_bound, "degree bound for sampled members");
	app.add_option("--element-cap", element_cap, "cap on enumerated group elements");
	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		int rc = app.exit(e);
		return rc == 0 ? 0 : 1;
	}

	try
	{
		zc::Problem p = zc::load_problem(input);
		if (samples)
			p.samples = *samples;
		if (tol)
			p.tol = *tol;
		if (seed)
			p.seed = *seed;
		if (degree_bound)
			p.degree_bound = *degree_bound;
		if (element_cap)
			p.element_cap = *element_cap;
		if (!g.empty())
			p.g = zc::parse_coeff_list(g);
		if (p.samples < 1 || !(p.tol > 0) || p.degree_bound < 0)
			throw zc::Error(zc::ErrorKind::InvalidInput, "samples >= 1, tol > 0 and degree-bound >= 0 required");

		zc::json::Json report;
		if (command == "analyze")
			report = zc::run_analyze(p);
		else if (command == "solve")
			report = zc::run_solve(p);
		else if (command == "verify")
			report = zc::run_verify(p);
		else
			report = zc::run_oracle(p);

		if (format == "json")
			std::cout << report.dump(2) << "\n";
		else
			std::cout << zc::render_text(report);
		return 0;
	}
	catch (const zc::Error &e)
	{
		std::cerr << "error [" << zc::to_string(e.kind()) << "]: " << e.message() << "\n";
		return zc::exit_code(e.kind());
	}
}
