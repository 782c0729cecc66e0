#include <CLI11.hpp>

#include <iostream>

#include "tamagawa/padic.hpp"

// Counts the roots of a squarefree integral cubic over Q_p and prints one
// Hensel certificate line per root found.
int main(int argc, char** argv) {
    CLI::App app{"count p-adic roots of a squarefree integral cubic"};
    std::string poly_text;
    std::string prime_text;
    long max_precision = 64;
    app.add_option("-f,--poly", poly_text, "polynomial in x, e.g. \"x^3 - 4*x + 2\"")
        ->required();
    app.add_option("-p,--prime", prime_text, "the prime p")->required();
    app.add_option("--max-precision", max_precision,
                   "p-adic digit budget before giving up");
    CLI11_PARSE(app, argc, argv);

    using namespace tamagawa;
    try {
        Poly f = parse_poly(poly_text);
        Int p(prime_text);
        auto rep = count_padic_roots(f, p, max_precision);
        std::cout << "roots in Q_" << to_string(rep.p) << ": " << rep.root_count
                  << "\n";
        for (const auto& cert : rep.certified_roots) {
            std::cout << "  approx=" << to_string(cert.approx)
                      << " precision=" << cert.precision << " v_f="
                      << (cert.f_val == val_inf ? std::string("inf")
                                                : std::to_string(cert.f_val))
                      << " v_fprime=" << cert.fprime_val << " side="
                      << (cert.reciprocal ? "reciprocal" : "main") << "\n";
        }
        std::cout << "precision used: " << rep.precision_used << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
