#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "precode/channel.hpp"
#include "precode/cli.hpp"
#include "precode/complexity.hpp"
#include "precode/modem.hpp"
#include "precode/precoding.hpp"
#include "precode/sim.hpp"

namespace py = pybind11;
using namespace precode;

PYBIND11_MODULE(_precode_lab, m) {
    m.doc() = "MU-MIMO downlink precoding library";
    m.attr("__version__") = kVersion;

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<SingularFactorError>(m, "SingularFactorError",
                                                PyExc_ArithmeticError);
    py::register_exception<FeasibilityError>(m, "FeasibilityError",
                                             PyExc_ValueError);

    py::enum_<Scheme>(m, "Scheme")
        .value("RZF", Scheme::Rzf)
        .value("PGP_RZF", Scheme::PgpRzf)
        .value("THP", Scheme::Thp)
        .value("HLTHP", Scheme::Hlthp);
    py::enum_<AngleModel>(m, "AngleModel")
        .value("LINEAR", AngleModel::Linear)
        .value("SIN", AngleModel::Sin)
        .value("LITERAL_EQ2", AngleModel::LiteralEq2);
    py::enum_<RootMode>(m, "RootMode")
        .value("HERMITIAN_SQRT", RootMode::HermitianSqrt)
        .value("LITERAL", RootMode::Literal);
    py::enum_<LinearReceiverMode>(m, "LinearReceiverMode")
        .value("LITERAL", LinearReceiverMode::Literal)
        .value("GENIE_GAIN", LinearReceiverMode::GenieGain);

    py::class_<LgPolicy>(m, "LgPolicy")
        .def_static("fixed", &LgPolicy::fixed, py::arg("l"))
        .def_static("auto_threshold", &LgPolicy::auto_threshold,
                    py::arg("threshold") = 1e-3);

    py::class_<CorrelationSet>(m, "CorrelationSet")
        .def_property_readonly("n_antennas",
                               [](const CorrelationSet& s) { return s.n_antennas; })
        .def_property_readonly("n_groups", &CorrelationSet::n_groups)
        .def_property_readonly("corr",
                               [](const CorrelationSet& s) { return s.corr; })
        .def_property_readonly("root",
                               [](const CorrelationSet& s) { return s.root; });

    m.def("make_correlation_set", &make_correlation_set, py::arg("n_antennas"),
          py::arg("n_groups"), py::arg("delta"), py::arg("omega"),
          py::arg("quad_points") = 512,
          py::arg("model") = AngleModel::Linear,
          py::arg("root_mode") = RootMode::HermitianSqrt);
    m.def(
        "sample_channel",
        [](const CorrelationSet& corr, int users_per_group, std::uint64_t seed,
           std::uint64_t block) {
            RngStream rng = RngStream::substream(seed, kTagChannel, block);
            return sample_channel(corr, users_per_group, rng);
        },
        py::arg("corr"), py::arg("users_per_group"), py::arg("seed"),
        py::arg("block") = 0);

    py::class_<LinearPrecoderState>(m, "LinearPrecoderState")
        .def_readonly("v", &LinearPrecoderState::v)
        .def_readonly("zeta", &LinearPrecoderState::zeta)
        .def_readonly("effective_gains", &LinearPrecoderState::effective_gains)
        .def_readonly("degenerate", &LinearPrecoderState::degenerate);
    py::class_<InnerPrecoder>(m, "InnerPrecoder")
        .def_readonly("l_retained", &InnerPrecoder::l_retained)
        .def_readonly("w", &InnerPrecoder::w);
    py::class_<ThpState>(m, "ThpState")
        .def_readonly("f", &ThpState::f)
        .def_readonly("b", &ThpState::b)
        .def_readonly("xi", &ThpState::xi)
        .def_readonly("tx_scale", &ThpState::tx_scale);
    py::class_<HlthpState>(m, "HlthpState")
        .def_readonly("xi", &HlthpState::xi)
        .def_readonly("tx_scale", &HlthpState::tx_scale);

    m.def("build_rzf", &build_rzf, py::arg("h"), py::arg("sigma_z2"),
          py::arg("p_tx"));
    m.def("build_inner", &build_inner, py::arg("corr"),
          py::arg("users_per_group"), py::arg("policy") = LgPolicy{});
    m.def("build_pgp_rzf", &build_pgp_rzf, py::arg("inner"), py::arg("h"),
          py::arg("sigma_z2"), py::arg("p_tx"));
    m.def("build_thp", &build_thp, py::arg("h"), py::arg("mod_order") = 16);
    m.def("thp_encode", &thp_encode);
    m.def("build_hlthp", &build_hlthp, py::arg("inner"), py::arg("h"),
          py::arg("mod_order") = 16);
    m.def("hlthp_encode", &hlthp_encode);
    m.def("receive_linear", &receive_linear, py::arg("state"), py::arg("r"),
          py::arg("mod_order"), py::arg("mode") = LinearReceiverMode::Literal);
    m.def("receive_thp", &receive_thp);
    m.def("receive_hlthp", &receive_hlthp);

    m.def("mod_reduce", &mod_reduce, py::arg("x"), py::arg("mod_order"));
    m.def("map_bits", &map_bits, py::arg("bits"), py::arg("mod_order"));
    m.def("demap", &demap, py::arg("y"), py::arg("mod_order"));
    m.def("slice_symbol", &slice_symbol, py::arg("y"), py::arg("mod_order"));

    m.def(
        "flops",
        [](Scheme s, int k, int n, int g, int t) {
            const CostResult r = flops({s, k, n, g, t});
            py::dict breakdown;
            for (const auto& term : r.breakdown)
                breakdown[py::str(term.label)] = term.flops;
            return py::make_tuple(r.flops, breakdown);
        },
        py::arg("scheme"), py::arg("k"), py::arg("n"), py::arg("g") = 1,
        py::arg("t") = 1);
    m.def("check_table1_consistency", &check_table1_consistency, py::arg("k"),
          py::arg("n"), py::arg("g"), py::arg("t"));
    m.def("complexity_ordering", &complexity_ordering, py::arg("ks"),
          py::arg("n"), py::arg("g"), py::arg("t"));

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("n", &SystemConfig::n)
        .def_readwrite("k", &SystemConfig::k)
        .def_readwrite("g", &SystemConfig::g)
        .def_readwrite("mod_order", &SystemConfig::mod_order)
        .def_readwrite("omega", &SystemConfig::omega)
        .def_readwrite("delta_deg", &SystemConfig::delta_deg)
        .def_readwrite("t", &SystemConfig::t)
        .def_readwrite("ebn0_grid_db", &SystemConfig::ebn0_grid_db)
        .def_readwrite("max_blocks", &SystemConfig::max_blocks)
        .def_readwrite("min_bit_errors", &SystemConfig::min_bit_errors)
        .def_readwrite("seed", &SystemConfig::seed)
        .def_readwrite("lg_policy", &SystemConfig::lg_policy)
        .def_readwrite("schemes", &SystemConfig::schemes)
        .def_readwrite("angle_model", &SystemConfig::angle_model)
        .def_readwrite("root_mode", &SystemConfig::root_mode)
        .def_readwrite("rx_mode", &SystemConfig::rx_mode)
        .def_readwrite("quad_points", &SystemConfig::quad_points)
        .def_readwrite("workers", &SystemConfig::workers)
        .def_property_readonly("beta", &SystemConfig::beta);

    py::class_<BerRecord>(m, "BerRecord")
        .def_readonly("scheme", &BerRecord::scheme)
        .def_readonly("ebn0_db", &BerRecord::ebn0_db)
        .def_readonly("bits", &BerRecord::bits)
        .def_readonly("errors", &BerRecord::errors)
        .def_readonly("ber", &BerRecord::ber)
        .def_readonly("blocks_used", &BerRecord::blocks_used)
        .def_readonly("degenerate_blocks", &BerRecord::degenerate_blocks);

    m.def("noise_variance", &noise_variance, py::arg("ebn0_db"),
          py::arg("mod_order"), py::arg("k"), py::arg("p_tx"));
    m.def("run_ber_point", &run_ber_point, py::arg("cfg"), py::arg("scheme"),
          py::arg("ebn0_db"), py::call_guard<py::gil_scoped_release>());
    m.def("sweep", &sweep, py::arg("cfg"),
          py::call_guard<py::gil_scoped_release>());
}
