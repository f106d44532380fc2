#include <gtest/gtest.h>

#include <sstream>

#include <mbl/corpus.hpp>
#include <mbl/json_io.hpp>

using namespace mbl;

namespace {

Poly P(const char* s) { return parse_polynomial(s); }

std::string dump(const std::vector<MomentInstance>& v)
{
    std::string s;
    for (const auto& i : v) {
        s += instance_to_json(i).dump() + "\n";
    }
    return s;
}

} // namespace

TEST(GenerateCorpus, Deterministic)
{
    CorpusSpec spec;
    spec.random = 10;
    spec.dP_max = 3;
    spec.seed = 42;
    const auto a = generate_corpus(spec);
    ASSERT_EQ(a.size(), 10u);
    EXPECT_EQ(dump(a), dump(generate_corpus(spec)));
    for (const auto& i : a) {
        EXPECT_LE(i.deg_P(), 3);
    }
    spec.seed = 43;
    EXPECT_NE(dump(a), dump(generate_corpus(spec)));
}

TEST(GenerateCorpus, PccFamilyIsCenter)
{
    CorpusSpec spec;
    spec.pcc_center = 12;
    spec.seed = 3;
    for (const auto& inst : generate_corpus(spec)) {
        const int K = bautin_bound(inst.deg_P(), inst.deg_Q());
        EXPECT_FALSE(finite_index(vanishing_index(inst, 2 * K))) << inst.id;
        EXPECT_LE(inst.deg_Q(), spec.dQ_max);
        EXPECT_TRUE(pcc_check(inst).holds());
    }
    const auto I = pcc_compose(P("z^2"), P("z"), P("z^2"), -1, 1);
    EXPECT_FALSE(finite_index(vanishing_index(I, 2 * bautin_bound(4, 2))));
}

TEST(GenerateCorpus, NearVanishing)
{
    const Poly Q = near_vanishing_Q(P("z^2"), 3, 0, -1, 1);
    EXPECT_EQ(Q, P("5*z^3-3*z"));
    const auto idx = finite_index(vanishing_index(MomentInstance(P("z^2"), Q, -1, 1), 20));
    EXPECT_EQ(idx, 1);

    // P = z: the conditions m_0..m_{d-1} = 0 single out the degree-d Legendre polynomial
    const Poly L3 = near_vanishing_Q(P("z"), 3, 2, -1, 1);
    EXPECT_EQ(L3, P("5*z^3-3*z"));
    EXPECT_THROW(near_vanishing_Q(P("z"), 2, 2, -1, 1), InfeasibleFamily);

    CorpusSpec spec;
    spec.near_vanishing = 10;
    spec.dP_min = 2;
    spec.dP_max = 4;
    spec.dQ_max = 6;
    for (const auto& inst : generate_corpus(spec)) {
        EXPECT_EQ(inst.Q.degree(), inst.deg_Q());
        EXPECT_EQ(sgn(moment(inst, 0)), 0) << inst.id;
    }
}

TEST(RunPipeline, SpecExamples)
{
    const auto rep = run_pipeline({MomentInstance(P("z^2"), P("z"), -1, 1, "E1"), MomentInstance(P("z^4"), P("z^2"), -1, 1, "pcc")});
    ASSERT_EQ(rep.reports.size(), 2u);
    EXPECT_EQ(rep.passed, 2);
    EXPECT_EQ(rep.reports[0].id, "E1");
    EXPECT_EQ(rep.reports[0].ord_R, 1);
    EXPECT_TRUE(rep.reports[1].center);
    EXPECT_TRUE(rep.reports[1].failed_flags().empty());
}

TEST(RunPipeline, HundredInstancesPass)
{
    CorpusSpec spec;
    spec.random = 50;
    spec.pcc_center = 20;
    spec.near_vanishing = 30;
    spec.dP_min = 2;
    spec.dP_max = 4;
    spec.dQ_max = 6;
    spec.seed = 7;
    const auto rep = run_corpus(spec);
    EXPECT_EQ(rep.passed, 100);
    EXPECT_EQ(rep.passed + rep.failed + rep.errors, 100);
    for (const auto& r : rep.reports) {
        EXPECT_TRUE(r.all_pass()) << bound_report_to_json(r).dump();
    }
}

TEST(RunPipeline, ThreadCountDoesNotChangeOutput)
{
    CorpusSpec spec;
    spec.random = 12;
    spec.dP_max = 3;
    spec.dQ_max = 4;
    PipelineOptions one, four;
    one.jobs = 1;
    four.jobs = 4;
    const auto a = run_corpus(spec, one);
    const auto b = run_corpus(spec, four);
    std::string sa, sb;
    for (const auto& r : a.reports) {
        sa += bound_report_to_json(r).dump();
    }
    for (const auto& r : b.reports) {
        sb += bound_report_to_json(r).dump();
    }
    EXPECT_EQ(sa, sb);
    EXPECT_EQ(run_summary_to_json(a, false), run_summary_to_json(b, false));
}

TEST(JsonIo, InstanceRoundTrip)
{
    const MomentInstance I(P("z^3-3*z"), P("1/2*z+z^2"), make_rational(-1, 2), 2, "x");
    std::istringstream one(instance_to_json(I).dump());
    const auto back = read_instances(one);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].P, I.P);
    EXPECT_EQ(back[0].Q, I.Q);
    EXPECT_EQ(back[0].a, I.a);
    EXPECT_EQ(back[0].id, "x");

    std::istringstream lines(instance_to_json(I).dump() + "\n" + instance_to_json(I).dump() + "\n");
    EXPECT_EQ(read_instances(lines).size(), 2u);
    std::istringstream arr("[" + instance_to_json(I).dump() + "]");
    EXPECT_EQ(read_instances(arr).size(), 1u);
}

TEST(JsonIo, SeriesAndCsv)
{
    const auto s = series_to_json(h_series(MomentInstance(P("z^2"), P("z"), -1, 1), 2));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0]["power"], -1);
    EXPECT_EQ(s[0]["coeff"], "4/3");
    EXPECT_EQ(s[1]["coeff"], "4/5");

    const auto rep = bound_audit(MomentInstance(P("z^2"), P("z"), -1, 1, "E1"));
    EXPECT_EQ(bound_report_csv(rep), "E1,2,1,1,0,4,1,7/2,0,-5/2,1,1,9/2,");
    EXPECT_EQ(std::string(csv_header()).substr(0, 3), "id,");
}
