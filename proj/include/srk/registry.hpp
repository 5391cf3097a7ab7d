#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "srk/tableau.hpp"

namespace srk {

namespace detail {

// Rows of A followed by b, rows of Ah followed by bh (row-major, s x s + s).
inline DoubleButcher make_tableau(std::string name, int order, int s, const std::vector<double>& imp,
                                  const std::vector<double>& exp, int form = 1) {
    if (int(imp.size()) != s * (s + 1) || int(exp.size()) != s * (s + 1))
        throw std::logic_error(name + ": coefficient count");
    DoubleButcher t;
    t.name = std::move(name);
    t.order = order;
    t.form = form;
    t.s = s;
    t.A.assign(s, std::vector<double>(s));
    t.Ah.assign(s, std::vector<double>(s));
    for (int j = 0; j < s; ++j)
        for (int k = 0; k < s; ++k) {
            t.A[j][k] = imp[j * s + k];
            t.Ah[j][k] = exp[j * s + k];
        }
    t.b.assign(imp.begin() + s * s, imp.end());
    t.bh.assign(exp.begin() + s * s, exp.end());
    validate(t);
    return t;
}

}  // namespace detail

// Ascher, Ruuth, Spiteri (1997) family

inline DoubleButcher ars111() {
    return detail::make_tableau("ARS(1,1,1)", 1, 2,
                                {0, 0,
                                 0, 1,
                                 0, 1},
                                {0, 0,
                                 1, 0,
                                 1, 0});
}

// forward-backward Euler
inline DoubleButcher ars121() {
    return detail::make_tableau("ARS(1,2,1)", 1, 2,
                                {0, 0,
                                 0, 1,
                                 0, 1},
                                {0, 0,
                                 1, 0,
                                 0, 1});
}

inline DoubleButcher ars222() {
    const double g = 1.0 - 1.0 / std::sqrt(2.0);
    const double d = 1.0 - 1.0 / (2.0 * g);
    return detail::make_tableau("ARS(2,2,2)", 2, 3,
                                {0, 0, 0,
                                 0, g, 0,
                                 0, 1 - g, g,
                                 0, 1 - g, g},
                                {0, 0, 0,
                                 g, 0, 0,
                                 d, 1 - d, 0,
                                 d, 1 - d, 0});
}

inline DoubleButcher ars232() {
    const double g = 1.0 - 0.5 * std::sqrt(2.0);
    const double d = -2.0 * std::sqrt(2.0) / 3.0;
    return detail::make_tableau("ARS(2,3,2)", 2, 3,
                                {0, 0, 0,
                                 0, g, 0,
                                 0, 1 - g, g,
                                 0, 1 - g, g},
                                {0, 0, 0,
                                 g, 0, 0,
                                 d, 1 - d, 0,
                                 0, 1 - g, g});
}

// middle root of 6x^3 - 18x^2 + 9x - 1 = 0
inline constexpr double kGamma343 = 0.435866521508458999416019451193556842529;

inline DoubleButcher ars343() {
    const double g = kGamma343;
    const double b1 = -1.5 * g * g + 4 * g - 0.25;
    const double b2 = 1.5 * g * g - 5 * g + 1.25;
    const double a42 = 0.5529291479, a43 = a42;
    const double a31 = (1 - 4.5 * g + 1.5 * g * g) * a42 + (2.75 - 10.5 * g + 3.75 * g * g) * a43 - 3.5 + 13 * g -
                       4.5 * g * g;
    const double a32 = -(1 - 4.5 * g + 1.5 * g * g) * a42 - (2.75 - 10.5 * g + 3.75 * g * g) * a43 + 4 - 12.5 * g +
                       4.5 * g * g;
    return detail::make_tableau("ARS(3,4,3)", 3, 4,
                                {0, 0, 0, 0,
                                 0, g, 0, 0,
                                 0, (1 - g) / 2, g, 0,
                                 0, b1, b2, g,
                                 0, b1, b2, g},
                                {0, 0, 0, 0,
                                 g, 0, 0, 0,
                                 a31, a32, 0, 0,
                                 1 - a42 - a43, a42, a43, 0,
                                 0, b1, b2, g});
}

inline DoubleButcher ars443() {
    return detail::make_tableau("ARS(4,4,3)", 3, 5,
                                {0, 0, 0, 0, 0,
                                 0, 0.5, 0, 0, 0,
                                 0, 1.0 / 6, 0.5, 0, 0,
                                 0, -0.5, 0.5, 0.5, 0,
                                 0, 1.5, -1.5, 0.5, 0.5,
                                 0, 1.5, -1.5, 0.5, 0.5},
                                {0, 0, 0, 0, 0,
                                 0.5, 0, 0, 0, 0,
                                 11.0 / 18, 1.0 / 18, 0, 0, 0,
                                 5.0 / 6, -5.0 / 6, 0.5, 0, 0,
                                 0.25, 1.75, 0.75, -1.75, 0,
                                 0.25, 1.75, 0.75, -1.75, 0});
}

// Boscarino, Russo (2007): modified ARS(3,4,3)
inline DoubleButcher mars343() {
    const double g = kGamma343;
    const double b2 = 1.20849664917601;
    return detail::make_tableau("MARS(3,4,3)", 3, 4,
                                {0, 0, 0, 0,
                                 0, g, 0, 0,
                                 0, 0.28206673924577, g, 0,
                                 0, b2, 1 - g - b2, g,
                                 0, b2, 1 - g - b2, g},
                                {0, 0, 0, 0,
                                 g, 0, 0, 0,
                                 0.535396540307354, 0.182536720446875, 0, 0,
                                 0.63041255815287, -0.83193390106308, 1.20152134291021, 0,
                                 0, b2, 1 - g - b2, g});
}

// Kennedy, Carpenter (2003)
inline DoubleButcher ark3() {
    const double g = kGamma343;
    const double b1 = 1471266399579. / 7840856788654.;
    const double b2 = -4482444167858. / 7529755066697.;
    const double b3 = 1 - g - b1 - b2;
    return detail::make_tableau("ARK3(2)4L[2]SA", 3, 4,
                                {0, 0, 0, 0,
                                 g, g, 0, 0,
                                 2746238789719. / 10658868560708., -640167445237. / 6845629431997., g, 0,
                                 b1, b2, b3, g,
                                 b1, b2, b3, g},
                                {0, 0, 0, 0,
                                 2 * g, 0, 0, 0,
                                 5535828885825. / 10492691773637., 788022342437. / 10882634858940., 0, 0,
                                 6485989280629. / 16251701735622., -4246266847089. / 9704473918619.,
                                 10755448449292. / 10357097424841., 0,
                                 b1, b2, b3, g});
}

inline DoubleButcher ark4() {
    const double b[6] = {82889. / 524892., 0., 15625. / 83664., 69875. / 102672., -2260. / 8211., 0.25};
    return detail::make_tableau(
        "ARK4(3)6L[2]SA", 4, 6,
        {0, 0, 0, 0, 0, 0,
         0.25, 0.25, 0, 0, 0, 0,
         8611. / 62500., -1743. / 31250., 0.25, 0, 0, 0,
         5012029. / 34652500., -654441. / 2922500., 174375. / 388108., 0.25, 0, 0,
         15267082809. / 155376265600., -71443401. / 120774400., 730878875. / 902184768., 2285395. / 8070912., 0.25, 0,
         b[0], b[1], b[2], b[3], b[4], b[5],
         b[0], b[1], b[2], b[3], b[4], b[5]},
        {0, 0, 0, 0, 0, 0,
         0.5, 0, 0, 0, 0, 0,
         13861. / 62500., 6889. / 62500., 0, 0, 0, 0,
         -116923316275. / 2393684061468., -2731218467317. / 15368042101831., 9408046702089. / 11113171139209., 0, 0, 0,
         -451086348788. / 2902428689909., -2682348792572. / 7519795681897., 12662868775082. / 11960479115383.,
         3355817975965. / 11060851509271., 0, 0,
         647845179188. / 3216320057751., 73281519250. / 8382639484533., 552539513391. / 3454668386233.,
         3354512671639. / 8306763924573., 4040. / 17871., 0,
         b[0], b[1], b[2], b[3], b[4], b[5]});
}

inline DoubleButcher ark5() {
    const double g = 41. / 200.;
    const double b[8] = {-872700587467. / 9133579230613., 0., 0., 22348218063261. / 9555858737531.,
                         -1143369518992. / 8141816002931., -39379526789629. / 19018526304540.,
                         32727382324388. / 42900044865799., 41. / 200.};
    return detail::make_tableau(
        "ARK5(4)8L[2]SA", 5, 8,
        {0, 0, 0, 0, 0, 0, 0, 0,
         g, g, 0, 0, 0, 0, 0, 0,
         41. / 400., -567603406766. / 11931857230679., g, 0, 0, 0, 0, 0,
         683785636431. / 9252920307686., 0, -110385047103. / 1367015193373., g, 0, 0, 0, 0,
         3016520224154. / 10081342136671., 0, 30586259806659. / 12414158314087., -22760509404356. / 11113319521817., g,
         0, 0, 0,
         218866479029. / 1489978393911., 0, 638256894668. / 5436446318841., -1179710474555. / 5321154724896.,
         -60928119172. / 8023461067671., g, 0, 0,
         1020004230633. / 5715676835656., 0, 25762820946817. / 25263940353407., -2161375909145. / 9755907335909.,
         -211217309593. / 5846859502534., -4269925059573. / 7827059040749., g, 0,
         b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7],
         b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7]},
        {0, 0, 0, 0, 0, 0, 0, 0,
         41. / 100., 0, 0, 0, 0, 0, 0, 0,
         367902744464. / 2072280473677., 677623207551. / 8224143866563., 0, 0, 0, 0, 0, 0,
         1268023523408. / 10340822734521., 0, 1029933939417. / 13636558850479., 0, 0, 0, 0, 0,
         14463281900351. / 6315353703477., 0, 66114435211212. / 5879490589093., -54053170152839. / 4284798021562., 0,
         0, 0, 0,
         14090043504691. / 34967701212078., 0, 15191511035443. / 11219624916014., -18461159152457. / 12425892160975.,
         -281667163811. / 9011619295870., 0, 0, 0,
         19230459214898. / 13134317526959., 0, 21275331358303. / 2942455364971., -38145345988419. / 4862620318723.,
         -1. / 8., -1. / 8., 0, 0,
         -19977161125411. / 11928030595625., 0, -40795976796054. / 6384907823539., 177454434618887. / 12078138498510.,
         782672205425. / 8267701900261., -69563011059811. / 9646580694205., 7356628210526. / 4942186776405., 0,
         b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7]});
}

// Boscarino, Russo (2007): modified ARK3(2)4L[2]SA
inline DoubleButcher mark3() {
    const double g = kGamma343;
    const double b1 = 0.60424832458800;
    return detail::make_tableau("MARK3(2)4L[2]SA", 3, 4,
                                {0, 0, 0, 0,
                                 g, g, 0, 0,
                                 -4.30002662176923, 2.26541338346372, g, 0,
                                 b1, 0, 1 - g - b1, g,
                                 b1, 0, 1 - g - b1, g},
                                {0, 0, 0, 0,
                                 2 * g, 0, 0, 0,
                                 -3.06478674186224, 1.46604002506519, 0, 0,
                                 0.21444560762133, 0.71075364965269, 0.07480074272597, 0,
                                 b1, 0, 1 - g - b1, g});
}

// Boscarino (2009)
inline DoubleButcher bhr553() {
    const int s = 5;
    std::vector<double> I(30, 0.0), E(30, 0.0);
    const double g = 424782. / 974569.;
    I[5] = I[6] = g;
    I[10] = g;
    I[11] = -31733082319927313. / 455705377221960889379854647102.;
    I[12] = g;
    I[15] = -3012378541084922027361996761794919360516301377809610. / 45123394056585269977907753045030512597955897345819349.;
    I[16] = -62865589297807153294268. / 102559673441610672305587327019095047.;
    I[17] = 418769796920855299603146267001414900945214277000. / 212454360385257708555954598099874818603217167139.;
    I[18] = g;
    I[20] = 487698502336740678603511. / 1181159636928185920260208.;
    I[22] = 302987763081184622639300143137943089. / 1535359944203293318639180129368156500.;
    I[23] = -105235928335100616072938218863. / 2282554452064661756575727198000.;
    I[24] = g;
    E[5] = 2 * g;
    E[10] = g;
    E[11] = g;
    E[15] = -475883375220285986033264. / 594112726933437845704163.;
    E[17] = 1866233449822026827708736. / 594112726933437845704163.;
    E[20] = 62828845818073169585635881686091391737610308247. / 176112910684412105319781630311686343715753056000.;
    E[21] = -I[22];
    E[22] = 262315887293043739337088563996093207. / 297427554730376353252081786906492000.;
    E[23] = -987618231894176581438124717087. / 23877337660202969319526901856000.;
    for (int i = 0; i < s; ++i) E[25 + i] = I[25 + i] = I[20 + i];
    return detail::make_tableau("BHR(5,5,3)", 3, s, I, E);
}

// Pareschi, Russo (2005)
inline DoubleButcher ssp2_322() {
    return detail::make_tableau("SSP2(3,2,2)", 2, 3,
                                {0.5, 0, 0,
                                 -0.5, 0.5, 0,
                                 0, 0.5, 0.5,
                                 0, 0.5, 0.5},
                                {0, 0, 0,
                                 0, 0, 0,
                                 0, 1, 0,
                                 0, 0.5, 0.5},
                                2);
}

inline std::vector<DoubleButcher> registry() {
    return {ars121(), ars232(), ars343(), ars111(), ars222(), ars443(), mars343(),
            ark3(),   ark4(),   ark5(),   mark3(),  bhr553(), ssp2_322()};
}

inline DoubleButcher find_tableau(const std::string& name) {
    for (auto& t : registry())
        if (t.name == name || file_stem(t.name) == name) return t;
    throw std::invalid_argument("unknown tableau: " + name);
}

}  // namespace srk
