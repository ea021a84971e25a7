#include "rogue/presets.hpp"

namespace rogue {
namespace {

constexpr cplx kI{0.0, 1.0};

CVec vec(std::initializer_list<cplx> v)
{
    CVec out(static_cast<int>(v.size()));
    int i = 0;
    for (const cplx& c : v) {
        out[i++] = c;
    }
    return out;
}

Preset scalar(std::string name, int order, std::vector<CVec> omega, FieldGrid window,
              std::optional<CensusExpectation> expected)
{
    return {std::move(name), WaveSpec{SpectralSetup(1.0, 2), order, OmegaSeries{std::move(omega)}}, window, 20.0,
            expected, std::nullopt};
}

} // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
    return names;
}

Preset preset(const std::string& name)
{
    const FieldGrid wide{-20.0, 20.0, 201, -20.0, 20.0, 201};
    if (name == "fig1") {
        return scalar(name, 1, {vec({1.0, 2.0 * kI})}, {-10.0, 10.0, 201, -10.0, 10.0, 201}, CensusExpectation{0, 1, {}});
    }
    if (name == "fig2") {
        return scalar(name, 2, {vec({1.0, 0.0}), vec({0.0, 1000.0 * kI})}, wide, CensusExpectation{6, {}, {}});
    }
    if (name == "fig3") {
        return scalar(name, 3, {vec({1.0, 0.0}), vec({0.0, 0.0}), vec({0.0, 1000.0 * kI})}, wide,
                      CensusExpectation{10, 1, {}});
    }
    if (name == "fig4") {
        return scalar(name, 3, {vec({1.0, 1.0}), vec({-1000.0 * kI, 1000.0 * kI}), vec({0.0, 1000.0 * kI})}, wide,
                      CensusExpectation{12, {}, 2});
    }
    if (name == "fig5") {
        return {name, WaveSpec{SpectralSetup(1.0, 3), 1, OmegaSeries{{vec({1.0, 2.0 * kI, kI})}}},
                {-20.0, 20.0, 201, -40.0, 40.0, 201}, 20.0, std::nullopt, std::nullopt};
    }
    const CVec l = vec({5e7, 5e7, 1.0});
    if (name == "fig6") {
        return {name, WaveSpec{SpectralSetup(1.0, 3), 2, GeneratingForm{l, {}, {}}},
                {-20.0, 40.0, 241, -20.0, 20.0, 201}, 20.0, std::nullopt, std::nullopt};
    }
    if (name == "fig7") {
        return {name, WaveSpec{SpectralSetup(1.0, 3), 2, GeneratingForm{l, {}, {0.0, 400.0, 300.0}}},
                {-20.0, 40.0, 241, -20.0, 20.0, 201}, 20.0, CensusExpectation{6, {}, {}},
                FieldGrid{-15.0, 15.0, 201, -12.0, 12.0, 201}};
    }
    throw UsageError("unknown preset '" + name + "' (expected fig1..fig7)");
}

} // namespace rogue
