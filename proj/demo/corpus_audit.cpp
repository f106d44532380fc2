// Small corpus run printed as CSV, with the aggregate on stderr.

#include <iostream>

#include <mbl/corpus.hpp>
#include <mbl/json_io.hpp>

int main(int argc, char** argv)
{
    using namespace mbl;
    CorpusSpec spec;
    spec.random = 20;
    spec.pcc_center = 5;
    spec.near_vanishing = 10;
    spec.dP_max = 4;
    spec.dQ_max = 6;
    spec.seed = argc > 1 ? std::stoull(argv[1]) : 1;

    const auto rep = run_corpus(spec);
    std::cout << csv_header() << '\n';
    for (const auto& r : rep.reports) {
        std::cout << bound_report_csv(r) << '\n';
    }
    std::cerr << run_summary_to_json(rep).dump() << '\n';
}
