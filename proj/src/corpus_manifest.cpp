#include <algorithm>

#include "qseries/corpus.hpp"

namespace qseries::corpus {

namespace {

// Recurring factors, spelled out once.
const std::string kLiuPre =
    "qpochinf(alpha*q,1)*qpochinf(alpha*a*b/q,1)/(qpochinf(alpha*a,1)*qpochinf(alpha*b,1))";
// Well-poised kernel (1 - alpha q^{2n}) (alpha; q)_n / ((1 - alpha) (q; q)_n).
const std::string kWp = "(1-alpha*q^(2*n))*qpoch(alpha,1,n)/((1-alpha)*qpoch(q,1,n))";
const std::string kLiuKernel = kWp + "*qpoch(q/a,1,n)*(a/q)^n/qpoch(alpha*a,1,n)";
const std::string kA = "qpoch(q/b,1,k)*qpoch(beta,1,k)*qpoch(gamma,1,k)*(b*z/q)^k"
                       "/(qpoch(q,1,k)*qpoch(c,1,k)*qpoch(d,1,k)*qpoch(h,1,k))";

const std::vector<std::string> kLiuConstraints = {"val(alpha) >= 0", "val(alpha*a) >= 1", "val(alpha*b) >= 1",
                                                  "val(alpha*a*b) >= 2"};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct Builder {
  std::vector<IdentitySpec> out;

  IdentitySpec& add(std::string id, std::string ref, std::string quote, std::string lhs, std::string rhs,
                    std::vector<std::string> symbols = {}, std::vector<std::string> constraints = {},
                    std::vector<Knob> knobs = {}) {
    IdentitySpec s;
    s.id = std::move(id);
    s.ref = std::move(ref);
    s.quote = std::move(quote);
    s.lhs = std::move(lhs);
    s.rhs = std::move(rhs);
    s.signature.symbols = std::move(symbols);
    s.signature.constraints = std::move(constraints);
    s.knobs = std::move(knobs);
    out.push_back(std::move(s));
    return out.back();
  }

  // A copy of the most recent entry with the same id, reported under another variant.
  IdentitySpec& variant_of(Variant v, std::string rhs, std::string note) {
    IdentitySpec s = out.back();
    s.variant = v;
    s.rhs = std::move(rhs);
    s.note = std::move(note);
    out.push_back(std::move(s));
    return out.back();
  }
};

std::vector<IdentitySpec> build() {
  Builder b;
  const Knob m03{"m", 0, 3};
  const Knob n012{"n", 0, 12};

  // ------------------------------------------------------------ expansions of f(x)

  b.add("LIU-EXP-1", "theorem: expansion of f(a) in q-derivatives at x = alpha q", "(αq/a; q)_n aⁿ", "polyF(a)",
        // The n = 0 term is f(alpha q): (x; q)_{-1} is not a polynomial in x.
        "polyF(alpha*q) + sum(n,1,inf,(1-alpha*q^(2*n))*qpoch(alpha*q/a,1,n)*a^n/(qpoch(q,1,n)*qpoch(a,1,n))"
        "*dqx(n,polyF(x)*qpoch(x,1,n-1),alpha*q))",
        {"alpha", "a"}, {"val(alpha) >= 0", "val(a) >= 1"})
      .signature.uses_poly = true;
  b.out.back().note = "n = 0 term written as f(alpha q)";

  b.add("LIU-EXP-2", "theorem: expansion of f(alpha a) through f(alpha q^{k+1})", "(α, q/a; q)_n (a/q)ⁿ",
        kLiuPre + "*polyF(alpha*a)",
        "sum(n,0,inf," + kLiuKernel +
            "*sum(k,0,n,qpoch(q^(-n),1,k)*qpoch(alpha*q^n,1,k)*q^k/(qpoch(q,1,k)*qpoch(alpha*b,1,k))"
            "*polyF(alpha*q^(k+1))))",
        {"alpha", "a", "b"}, kLiuConstraints)
      .signature.uses_poly = true;

  // ------------------------------------------------------------ multiple products

  const std::vector<std::string> kMultiSyms = {"alpha", "a", "b", "b#", "c#"};
  const std::vector<std::string> kMultiCons = concat(
      kLiuConstraints, {"val(a) >= 2", "val(alpha*b#) >= 1", "val(alpha*c#) >= 1", "val(alpha*a*c#) >= 2", "val(alpha*a*b#) >= 2"});

  b.add("MULTIPROD", "theorem: product of m + 2 infinite-product ratios", "(a/q)^l (αq, αab/q; q)∞",
        "(a/q)^${l}*" + kLiuPre +
            "$prod(m; qpochinf(alpha*a*b#/q,1)*qpochinf(alpha*c#,1)/(qpochinf(alpha*a*c#/q,1)*qpochinf(alpha*b#,1)))",
        "sum(n,0,inf," + kLiuKernel +
            "*phi([q^(-n), alpha*q^n$list(m; alpha*c#)],[alpha*b$list(m; alpha*b#)],1,q^(${l}+1)))",
        kMultiSyms, kMultiCons, {m03, {"l", 0, 2}});

  b.add("MULTIPROD-L0", "theorem: product expansion, l = 0", "φ(q^{-n}, αqⁿ, αc₁, …; αb, αb₁, …; q, q)",
        kLiuPre +
            "$prod(m; qpochinf(alpha*a*b#/q,1)*qpochinf(alpha*c#,1)/(qpochinf(alpha*a*c#/q,1)*qpochinf(alpha*b#,1)))",
        "sum(n,0,inf," + kLiuKernel +
            "*phi([q^(-n), alpha*q^n$list(m; alpha*c#)],[alpha*b$list(m; alpha*b#)],1,q))",
        kMultiSyms, kMultiCons, {m03});

  b.add("MULTIPROD-A0", "theorem: product expansion, a = 0", "(−1)ⁿ q^{n(n−1)/2}",
        "qpochinf(alpha*q,1)/qpochinf(alpha*b,1)$prod(m; qpochinf(alpha*c#,1)/qpochinf(alpha*b#,1))",
        "sum(n,0,inf," + kWp +
            "*(-1)^n*q^(n*(n-1)/2)*phi([q^(-n), alpha*q^n$list(m; alpha*c#)],[alpha*b$list(m; alpha*b#)],1,q))",
        {"alpha", "b", "b#", "c#"},
        {"val(alpha) >= 0", "val(alpha*b) >= 1", "val(alpha*b#) >= 1", "val(alpha*c#) >= 1"}, {m03});

  b.add("SUMFORM", "theorem: q-summation formula, all b's zero", "(αq, αc₁, …, αc_m; q)∞",
        "qpochinf(alpha*q,1)$prod(m; qpochinf(alpha*c#,1))",
        "sum(n,0,inf," + kWp +
            "*(-1)^n*q^(n*(n-1)/2)*phi([q^(-n), alpha*q^n$list(m; alpha*c#)],[0$list(m; 0)],1,q))",
        {"alpha", "c#"}, {"val(alpha) >= 0", "val(alpha*c#) >= 1"}, {m03});

  b.add("RECIPFORM", "theorem: reciprocal products, all c's zero", "(αq; q)∞/(αb, αb₁, …, αb_m; q)∞",
        "qpochinf(alpha*q,1)/(qpochinf(alpha*b,1)$prod(m; qpochinf(alpha*b#,1)))",
        "sum(n,0,inf," + kWp +
            "*(-1)^n*q^(n*(n-1)/2)*phi([q^(-n), alpha*q^n$list(m; 0)],[alpha*b$list(m; alpha*b#)],1,q))",
        {"alpha", "b", "b#"}, {"val(alpha) >= 0", "val(alpha*b) >= 1", "val(alpha*b#) >= 1"}, {m03});

  // alpha = r^2 so that sqrt(alpha) stays a monomial.
  b.add("ROGERS-65", "theorem: Rogers 6phi5 summation", "₆φ₅(α, q√α, −q√α, q/a, q/b, q/c; …; αabc/q²)",
        "phi([r^2, q*r, -q*r, q/a, q/b, q/c],[r, -r, r^2*a, r^2*b, r^2*c],1,r^2*a*b*c/q^2)",
        "qpochinf(r^2*q,1)*qpochinf(r^2*a*b/q,1)*qpochinf(r^2*a*c/q,1)*qpochinf(r^2*b*c/q,1)"
        "/(qpochinf(r^2*a,1)*qpochinf(r^2*b,1)*qpochinf(r^2*c,1)*qpochinf(r^2*a*b*c/q^2,1))",
        {"r", "a", "b", "c"},
        {"val(r) >= 0", "val(r^2*a*b*c) >= 3", "val(r^2*a) >= 1", "val(r^2*b) >= 1", "val(r^2*c) >= 1",
         "val(r^2*a*b) >= 2", "val(r^2*a*c) >= 2", "val(r^2*b*c) >= 2"});

  // ------------------------------------------------------------ Hecke-type double sums

  b.add("HECKE-MAIN", "theorem: Hecke-type double sum with two parameters", "(ab)ⁿ q^{n²−j²}",
        "qpochinf(q,1)*qpochinf(a*b,1)/(qpochinf(q*a,1)*qpochinf(q*b,1))"
        "*sum(n,0,inf,qpoch(q/a,1,n)*qpoch(q/b,1,n)*(-a*b)^n/qpoch(q^2,2,n))",
        "sum(n,0,inf,(1-q^(2*n+1))*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(a*b)^n/(qpoch(q*a,1,n)*qpoch(q*b,1,n))"
        "*sum(j,-n,n,(-1)^j*q^(n^2-j^2)))",
        {"a", "b"}, {"val(a) >= 0", "val(b) >= 0", "val(a*b) >= 1"});

  b.add("ADH", "proposition: Andrews-Dyson-Hickerson type identity", "q^{(3n²+n)/2−j²}",
        "sum(n,0,inf,q^(n*(n+1)/2)/qpoch(-q,1,n))",
        "sum(n,0,inf,(-1)^n*(1-q^(2*n+1))*sum(j,-n,n,(-1)^j*q^((3*n^2+n)/2-j^2)))");
  b.add("ADH-SPEC-1", "proposition: first special case", "q^{n²+n−j²}",
        "sum(n,0,inf,qpoch(q,2,n)*q^n/qpoch(q^2,2,n))",
        "qpochinf(q,2)/qpochinf(q^2,2)*sum(n,0,inf,(-1)^n*sum(j,-n,n,(-1)^j*q^(n^2+n-j^2)))");
  b.add("ADH-SPEC-2", "proposition: second special case", "q^{2n²+n−j²}",
        "sum(n,0,inf,(-1)^n*q^(n^2+n)/qpoch(q^2,2,n))",
        "1/qpochinf(q,1)*sum(n,0,inf,(1-q^(2*n+1))*sum(j,-n,n,(-1)^j*q^(2*n^2+n-j^2)))");
  b.add("ADH-SPEC-3", "proposition: third special case", "(3n²+n)/2−j²",
        "sum(n,0,inf,(-1)^n*q^(n*(n+1)/2)/qpoch(q,1,n))",
        "qpochinf(-q,1)/qpochinf(q,1)*sum(n,0,inf,(1-q^(2*n+1))*sum(j,-n,n,(-1)^j*q^((3*n^2+n)/2-j^2)))");

  b.add("SEARS-EXP", "theorem: expansion through the Sears transformation", "(αabc)ⁿ q^{n²−2n}",
        kLiuPre + "*phi([q/a, q/b, beta],[c, d],1,alpha*a*b/q)",
        "sum(n,0,inf," + kWp +
            "*qpoch(q/a,1,n)*qpoch(q/b,1,n)*qpoch(q*alpha/c,1,n)*(alpha*a*b*c)^n*q^(n^2-2*n)"
            "/(qpoch(alpha*a,1,n)*qpoch(alpha*b,1,n)*qpoch(c,1,n))"
            "*phi([q^(-n), alpha*q^n, d/beta],[d, q*alpha/c],1,q*beta/c))",
        {"alpha", "a", "b", "c", "d", "beta"},
        concat(kLiuConstraints, {"val(c) >= 0", "val(d) >= 0", "coeff(alpha/c) != 1"}));

  b.add("ANDREWS-BETA", "proposition: two-parameter Andrews-type expansion", "q^{n²}(−qβ; q)_n αⁿ",
        "sum(n,0,inf,q^(n^2)*qpoch(-q*beta,1,n)*alpha^n/qpoch(q^2,2,n))",
        "1/qpochinf(q*alpha,1)*sum(n,0,inf,(1-alpha*q^(2*n))*qpoch(alpha^2,2,n)*(-alpha)^n*q^(2*n^2)"
        "/((1-alpha)*qpoch(q^2,2,n))*phi([q^(-n), alpha*q^n],[-alpha],1,q*beta))",
        {"alpha", "beta"}, {"val(alpha) >= 0", "val(beta) >= 0"});

  // ------------------------------------------------------------ terminating transformations

  b.add("WATSON", "theorem: Watson's 8phi7 transformation", "₈φ₇(α, q√α, −q√α, …; q, α²abcdq^{n−2})",
        "qpoch(r^2*q,1,n)*qpoch(r^2*a*b/q,1,n)/(qpoch(r^2*a,1,n)*qpoch(r^2*b,1,n))"
        "*phi([q^(-n), q/a, q/b, r^2*c*d/q],[r^2*c, r^2*d, q^2/(r^2*a*b*q^n)],1,q)",
        "phi([r^2, q*r, -q*r, q/a, q/b, q/c, q/d, q^(-n)],[r, -r, r^2*a, r^2*b, r^2*c, r^2*d, r^2*q^(n+1)],1,"
        "r^4*a*b*c*d*q^(n-2))",
        {"r", "a", "b", "c", "d"},
        {"val(r) >= 0", "val(r^2*a) >= 1", "val(r^2*b) >= 1", "val(r^2*c) >= 1", "val(r^2*d) >= 1",
         "coeff(r^2*a*b) != 1"},
        {n012})
      .finite = true;

  const std::vector<std::string> kWwCons = {"val(alpha) >= 0", "val(alpha*c) >= 1", "val(alpha*d) >= 1"};
  const std::string kWwPre = "(-alpha)^n*q^(n*(n+1)/2)*qpoch(q,1,n)/qpoch(q*alpha,1,n)";
  const std::string kWwRow = "(1-alpha*q^(2*j))*qpoch(alpha,1,j)/((1-alpha)*qpoch(q,1,j))";
  const std::string kWwSide = "(-1)^n*qpoch(alpha*q,1,n)/qpoch(q,1,n)*q^(n*(n+1)/2)";
  b.add("WW-1", "proposition: terminating 3phi2 as a well-poised sum", "(−α)ⁿ q^{n(n+1)/2}",
        "phi([q^(-n), alpha*q^(n+1), alpha*c*d/q],[alpha*c, alpha*d],1,q)",
        kWwPre + "*sum(j,0,n,(-1)^j*" + kWwRow +
            "*qpoch(q/c,1,j)*qpoch(q/d,1,j)/(qpoch(alpha*c,1,j)*qpoch(alpha*d,1,j))*(c*d/q)^j*q^(-j*(j+1)/2))",
        {"alpha", "c", "d"}, kWwCons, {n012})
      .finite = true;
  b.add("WW-2", "proposition: terminating 2phi1, d = 0", "cʲ α⁻ʲ q^{−j²−j}",
        "phi([q^(-n), alpha*q^(n+1)],[alpha*c],1,c)",
        kWwPre + "*sum(j,0,n," + kWwRow +
            "*qpoch(q/c,1,j)/qpoch(alpha*c,1,j)*c^j*alpha^(-j)*q^(-j^2-j))",
        {"alpha", "c"}, {"val(alpha) >= 0", "val(alpha*c) >= 1"}, {n012})
      .finite = true;
  b.add("WW-3", "proposition: terminating 3phi2 at argument 1", "q^{j(j−3)/2}(αcd)ʲ",
        kWwSide + "*phi([q^(-n), alpha*q^(n+1), alpha*c*d/q],[alpha*c, alpha*d],1,1)",
        "sum(j,0,n,(-1)^j*" + kWwRow +
            "*qpoch(q/c,1,j)*qpoch(q/d,1,j)/(qpoch(alpha*c,1,j)*qpoch(alpha*d,1,j))*q^(j*(j-3)/2)*(alpha*c*d)^j)",
        {"alpha", "c", "d"}, kWwCons, {n012})
      .finite = true;
  b.add("WW-4", "proposition: terminating 2phi1 at argument 1", "q^{j²−j}(αc)ʲ",
        kWwSide + "*phi([q^(-n), alpha*q^(n+1)],[alpha*c],1,1)",
        "sum(j,0,n," + kWwRow + "*qpoch(q/c,1,j)/qpoch(alpha*c,1,j)*q^(j^2-j)*(alpha*c)^j)",
        {"alpha", "c"}, {"val(alpha) >= 0", "val(alpha*c) >= 1"}, {n012})
      .finite = true;
  b.add("WW-5", "proposition: terminating 2phi1 at argument c/q", "(c/q)ʲ",
        kWwSide + "*phi([q^(-n), alpha*q^(n+1)],[alpha*c],1,c/q)",
        "sum(j,0,n," + kWwRow + "*qpoch(q/c,1,j)/qpoch(alpha*c,1,j)*(c/q)^j)",
        {"alpha", "c"}, {"val(alpha) >= 0", "val(alpha*c) >= 1"}, {n012})
      .finite = true;

  // ------------------------------------------------------------ powers of eta, phi, psi

  b.add("ETA-POW-1", "proposition: (q; q)_inf^{m+1}", "(1−q^{2n+1})",
        "qpochinf(q,1)^(${m}+1)",
        "sum(n,0,inf,(-1)^n*(1-q^(2*n+1))*q^(n*(n-1)/2)*phi([q^(-n), q^(n+1)$list(m; q)],[0$list(m; 0)],1,q))",
        {}, {}, {m03});
  b.add("ETA-POW-2", "proposition: (q; q)_inf^{m+1}, second form", "(1+qⁿ)q^{n(n−1)/2}",
        "qpochinf(q,1)^(${m}+1)",
        "1 + sum(n,1,inf,(-1)^n*(1+q^n)*q^(n*(n-1)/2)*phi([q^(-n), q^n$list(m; q)],[0$list(m; 0)],1,q))", {}, {},
        {m03});
  b.add("ETA-RECIP-1", "proposition: 1/(q; q)_inf^m", "(1−q^{2n+1})q^{n(n−1)/2}",
        "1/qpochinf(q,1)^${m}",
        "sum(n,0,inf,(-1)^n*(1-q^(2*n+1))*q^(n*(n-1)/2)*phi([q^(-n), q^(n+1)$list(m; 0)],[q$list(m; q)],1,q))", {},
        {}, {m03});
  b.add("ETA-RECIP-2", "proposition: 1/(q; q)_inf^m, second form", "(1+qⁿ) q^{n(n−1)/2}",
        "1/qpochinf(q,1)^${m}",
        "1 + sum(n,1,inf,(-1)^n*(1+q^n)*q^(n*(n-1)/2)*phi([q^(-n), q^n$list(m; 0)],[q$list(m; q)],1,q))", {}, {},
        {m03});
  b.out.back().note = "n = 0 term taken as 1";
  b.variant_of(Variant::AsPrinted,
               "sum(n,0,inf,(-1)^n*(1+q^n)*q^(n*(n-1)/2)*phi([q^(-n), q^n$list(m; 0)],[q$list(m; q)],1,q))",
               "sum from n = 0 with (1 + q^n): the n = 0 term is 2");

  b.add("PARTITION", "introduction: partition generating function as a 3phi2 sum", "Σ p(n)qⁿ",
        "1/qpochinf(q,1)",
        "sum(n,0,inf,(-1)^n*(1-q^(2*n+1))*q^(n*(n-1)/2)*phi([q^(-n), q^(n+1), 0],[q, q],1,q))");
  b.out.back().note = "carries the factor (1 - q^{2n+1}) of the 1/(q; q)_inf^m family";
  b.variant_of(Variant::AsPrinted, "sum(n,0,inf,(-1)^n*q^(n*(n-1)/2)*phi([q^(-n), q^(n+1), 0],[q, q],1,q))",
               "without the factor (1 - q^{2n+1})");

  b.add("PHI-POW-ODD", "proposition: phi(-q)^{m+1}", "(1+qⁿ) q^{n(n−1)/2}", "subsnegq(thetaphi)^(${m}+1)",
        "1 + sum(n,1,inf,(-1)^n*(1+q^n)*q^(n*(n-1)/2)*phi([q^(-n), q^n$list(m; q)],[-q$list(m; -q)],1,q))", {},
        {}, {m03});
  b.add("PHI-POW-EVEN", "proposition: phi(-q)^{2m+2}", "1+2Σ(−1)ⁿ", "subsnegq(thetaphi)^(2*${m}+2)",
        "1 + 2*sum(n,1,inf,(-1)^n*phi([q^(-n), q^n$list(m; q)],[-q$list(m; -q)],1,q))", {}, {}, {m03});
  b.add("SQUARES-2", "display: sums of two squares", "1+4Σ(−1)ⁿ q^{n(n+1)/2}/(1+qⁿ)", "subsnegq(thetaphi)^2",
        "1 + 4*sum(n,1,inf,(-1)^n*q^(n*(n+1)/2)/(1+q^n))");
  b.add("SQUARES-4", "display: sums of four squares", "1+8Σ(−1)ⁿ qⁿ/(1+qⁿ)²", "subsnegq(thetaphi)^4",
        "1 + 8*sum(n,1,inf,(-1)^n*q^n/(1+q^n)^2)");
  b.add("PHI-POW-GEN", "proposition: phi(-q)^{m+2}, product form", "(1−qⁿ)/(1+qⁿ)",
        "(qpochinf(q,1)/qpochinf(-q,1))^(${m}+2)",
        "1 + 2*sum(n,1,inf,(-1)^n*phi([q^(-n), q^n$list(m; q)],[-q$list(m; 0)],1,q))", {}, {}, {m03});
  b.add("ANDREWS-3SQ", "proposition: sums of three squares", "φ(−q)³", "subsnegq(thetaphi)^3",
        "1 + 4*sum(n,1,inf,(-1)^n*q^n/(1+q^n)) - 2*sum(n,1,inf,(1-q^n)/(1+q^n)"
        "*sum(j,1-n,n-1,(-1)^j*q^(n^2-j^2)))");
  b.add("PSI-POW", "proposition: psi(q)^{m+1}", "(1+q^{2n}) q^{n²−n}", "thetapsi^(${m}+1)",
        "1 + sum(n,1,inf,(-1)^n*(1+q^(2*n))*q^(n^2-n)*phi([q^(-2*n), q^(2*n)$list(m; q^2)],[q$list(m; q)],2,q^2))",
        {}, {}, {m03});
  b.add("PSI-POW-2", "proposition: psi(q)^{m+2}", "(1+q^{2n+1})q^{−n}/(1−q)", "thetapsi^(${m}+2)",
        "sum(n,0,inf,(1+q^(2*n+1))*q^(-n)/(1-q)*phi([q^(-2*n), q^(2*n+2)$list(m; q^2)],[q^3$list(m; 0)],2,q^2))",
        {}, {}, {m03});
  b.add("TRI-2", "display: sums of two triangular numbers", "(1+q^{2n+1})q^{n²+n}/(1−q^{2n+1})", "thetapsi^2",
        "sum(n,0,inf,(-1)^n*(1+q^(2*n+1))*q^(n^2+n)/(1-q^(2*n+1)))");
  b.add("ANDREWS-3TRI", "display: sums of three triangular numbers", "Σ_{j=0}^{2n}", "thetapsi^3",
        "sum(n,0,inf,(1+q^(2*n+1))/(1-q^(2*n+1))*sum(j,0,2*n,q^(2*n^2+2*n-j*(j+1)/2)))");

  // ------------------------------------------------------------ triple-product expansions

  b.add("LIU-TRIP", "theorem: expansion with three infinite-product ratios", "(−αab)ⁿ q^{n(n−3)/2}",
        "qpochinf(q*alpha,1)*qpochinf(alpha*c,1)*qpochinf(alpha*a*b/q,1)"
        "/(qpochinf(alpha*a,1)*qpochinf(alpha*b,1)*qpochinf(alpha*a*c/q,1))",
        "sum(n,0,inf," + kWp +
            "*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(-alpha*a*b)^n*q^(n*(n-3)/2)/(qpoch(alpha*a,1,n)*qpoch(alpha*b,1,n))"
            "*phi([q^(-n), alpha*q^n],[q/b],1,q*c/b))",
        {"alpha", "a", "b", "c"}, concat(kLiuConstraints, {"val(alpha*c) >= 1", "val(alpha*a*c) >= 2"}));
  b.add("ANDREWS-THM5", "theorem: Andrews-type expansion with an inner finite sum", "α⁻ʲ q^{j(1−n)}",
        "qpochinf(q,1)*" + kLiuPre + "/qpochinf(a,1)",
        "sum(n,0,inf,(1-alpha*q^(2*n))*qpoch(alpha,1,n)*qpoch(q/a,1,n)*(alpha*a)^n*q^(n^2-n)"
        "/((1-alpha)*qpoch(alpha*a,1,n)*qpoch(alpha*b,1,n))"
        "*sum(j,0,n,qpoch(alpha*b/q,1,j)*alpha^(-j)*q^(j*(1-n))/qpoch(q,1,j)))",
        {"alpha", "a", "b"}, concat(kLiuConstraints, {"val(a) >= 1"}));
  b.add("LIU-TRIP-DEGEN", "remark: the case b = c", "(αa)ⁿ q^{n(n−1)}",
        "qpochinf(alpha,1)/qpochinf(alpha*a,1)",
        "sum(n,0,inf,(1-alpha*q^(2*n))*qpoch(alpha,1,n)*qpoch(q/a,1,n)*(alpha*a)^n*q^(n*(n-1))"
        "/(qpoch(q,1,n)*qpoch(alpha*a,1,n)))",
        {"alpha", "a"}, {"val(alpha) >= 1", "val(alpha*a) >= 1"});
  b.add("TRIP-A", "proposition: one-parameter double sum", "(q/a; q)_n aⁿ/(a; q)_{n+1}",
        "qpochinf(q,1)^2*qpochinf(-a,1)/(qpochinf(a,1)^2*qpochinf(-q,1))",
        "sum(n,0,inf,(-1)^n*(1-q^(2*n+1))*qpoch(q/a,1,n)*a^n/qpoch(a,1,n+1)*sum(j,-n,n,(-1)^j*q^(n^2-j^2)))",
        {"a"}, {"val(a) >= 1"});
  b.add("HECKE-ETA", "display: a = -1 case", "(q; q)²∞ (q; q²)∞", "qpochinf(q,1)^2*qpochinf(q,2)",
        "sum(n,0,inf,(1-q^(2*n+1))*sum(j,-n,n,(-1)^j*q^((3*n^2+n)/2-j^2)))");
  b.add("PHI-PSI", "display: product of the two theta functions", "(1+q^{2n+1}) q^{2n²+n−2j²}",
        "thetaphi*thetapsi",
        "sum(n,0,inf,(-1)^n*(1+q^(2*n+1))*sum(j,-n,n,(-1)^j*q^(2*n^2+n-2*j^2)))");
  b.add("TRIP-B", "proposition: one-parameter double sum in base q^2", "(aq; q²)∞",
        "qpochinf(q^2,2)^2*qpochinf(a*q,2)/(qpochinf(a,2)^2*qpochinf(q,2))",
        "sum(n,0,inf,(1+q^(2*n+1))*qpoch(q^2/a,2,n)*a^n/qpoch(a,2,n+1)*sum(j,-n,n,q^(2*n^2+n-2*j^2-j)))", {"a"},
        {"val(a) >= 1"});
  b.add("PSI-CUBE", "display: three triangular numbers", "q^{2n²+2n−2j²−j}", "thetapsi^3",
        "sum(n,0,inf,(1+q^(2*n+1))/(1-q^(2*n+1))*sum(j,-n,n,q^(2*n^2+2*n-2*j^2-j)))");
  b.add("PSI-Q2-PSI", "display: psi(q^2) psi(q)", "ψ(q²)ψ(q)", "subsq(thetapsi,2)*thetapsi",
        "sum(n,0,inf,(-1)^n*sum(j,-n,n,(-1)^j*q^(2*n^2+2*n-2*j^2-j)))");
  b.out.back().note = "sign (-1)^(n+j)";
  b.variant_of(Variant::AsPrinted, "sum(n,0,inf,sum(j,-n,n,(-1)^j*q^(2*n^2+2*n-2*j^2-j)))", "sign (-1)^j as printed");
  b.add("HECKE-ETA-2", "display: (q^2; q^2)^2 / (q; q^2)", "q^{3n²+2n−2j²−j}", "qpochinf(q^2,2)^2/qpochinf(q,2)",
        "sum(n,0,inf,(-1)^n*(1+q^(2*n+1))*sum(j,-n,n,q^(3*n^2+2*n-2*j^2-j)))");

  // ------------------------------------------------------------ general transformations

  b.add("GEN-TRANS-A", "theorem: transformation for a general sequence A_n", "(q/b, β, γ; q)_k (bz/q)^k",
        kLiuPre + "*sum(n,0,inf,(" + [] {
          std::string a = kA;
          std::replace(a.begin(), a.end(), 'k', 'n');
          return a;
        }() + ")*qpoch(q/a,1,n)*(alpha*a)^n)",
        "sum(n,0,inf," + kWp +
            "*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(-alpha*a*b/q)^n*q^(n*(n-1)/2)/(qpoch(alpha*a,1,n)*qpoch(alpha*b,1,n))"
            "*sum(k,0,n,qpoch(q^(-n),1,k)*qpoch(alpha*q^n,1,k)*(q^2/b)^k/qpoch(q/b,1,k)*" + kA + "))",
        {"alpha", "a", "b", "c", "d", "h", "beta", "gamma", "z"},
        concat(kLiuConstraints, {"val(c) >= 0", "val(d) >= 0", "val(h) >= 0", "val(z) >= 0"}));
  b.add("GEN-TRANS-B", "theorem: 4phi3 transformation", "|αabz/q| < 1",
        kLiuPre + "*phi([q/a, q/b, beta, gamma],[c, d, h],1,alpha*a*b*z/q)",
        "sum(n,0,inf," + kWp +
            "*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(-alpha*a*b/q)^n*q^(n*(n-1)/2)/(qpoch(alpha*a,1,n)*qpoch(alpha*b,1,n))"
            "*phi([q^(-n), alpha*q^n, beta, gamma],[c, d, h],1,q*z))",
        {"alpha", "a", "b", "c", "d", "h", "beta", "gamma", "z"},
        concat(kLiuConstraints, {"val(c) >= 0", "val(d) >= 0", "val(h) >= 0", "val(z) >= 0"}));
  b.add("CHU-SPECIAL", "display: terminating 2phi1 evaluated by S_n", "(−1)ⁿ q^{n(n+1)/2} Σ(−1)ʲ q^{−j²}",
        "phi([q^(-n), q^(n+1)],[-q],1,-q)", "(-1)^n*q^(n*(n+1)/2)*S(n)", {}, {}, {n012})
      .finite = true;
  b.add("GEN-TRANS-C", "theorem: expansion with the inner sum (c; q)_j", "(c; q)_j α⁻ʲ q^{j(1−n)}",
        kLiuPre + "*sum(n,0,inf,qpoch(q/a,1,n)*qpoch(q/b,1,n)*(alpha*a*b/q)^n/qpoch(c*q,1,n))",
        "sum(n,0,inf,(1-alpha*q^(2*n))*qpoch(alpha,1,n)*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(-alpha^2*a*b)^n"
        "*q^(3*n*(n-1)/2)/((1-alpha)*qpoch(q*c,1,n)*qpoch(alpha*a,1,n)*qpoch(alpha*b,1,n))"
        "*sum(j,0,n,qpoch(c,1,j)*alpha^(-j)*q^(j*(1-n))/qpoch(q,1,j)))",
        {"alpha", "a", "b", "c"}, concat(kLiuConstraints, {"val(c) >= 0"}));

  // ------------------------------------------------------------ Hecke families D..H

  b.add("HECKE-D", "theorem: double sum with (q; q)_{2n} denominators", "(ab/q)ⁿ/(q; q)_{2n}",
        "qpochinf(q^2,2)*qpochinf(a*b,2)/(qpochinf(q^2*a,2)*qpochinf(q^2*b,2))"
        "*sum(n,0,inf,qpoch(q^2/a,2,n)*qpoch(q^2/b,2,n)*(a*b/q)^n/qpoch(q,1,2*n))",
        "sum(n,0,inf,(1-q^(4*n+2))*qpoch(q^2/a,2,n)*qpoch(q^2/b,2,n)*(a*b)^n/(qpoch(q^2*a,2,n)*qpoch(q^2*b,2,n))"
        "*sum(j,-n,n,q^(2*n^2-2*j^2-j)))",
        {"a", "b"}, {"val(a) >= -1", "val(b) >= -1", "val(a*b) >= 2"});
  b.add("HECKE-D-1", "display: a, b -> 0", "q^{2n²+n}/(q; q)_{2n}", "sum(n,0,inf,q^(2*n^2+n)/qpoch(q,1,2*n))",
        "1/qpochinf(q^2,2)*sum(n,0,inf,(1-q^(4*n+2))*sum(j,-n,n,q^(4*n^2-2*j^2+2*n-j)))");
  b.add("HECKE-D-2", "display: b -> 0, a = q", "q^{3n²−2j²+n−j}", "sum(n,0,inf,(-1)^n*q^(n^2)/qpoch(q,2,n))",
        "sum(n,0,inf,(-1)^n*(1-q^(4*n+2))*sum(j,-n,n,q^(3*n^2-2*j^2+n-j)))");
  b.add("HECKE-D-3", "display: a = -b = q", "(q²; q⁴)_n (−q)ⁿ", "sum(n,0,inf,qpoch(q^2,4,n)*(-q)^n/qpoch(q,1,2*n))",
        "qpochinf(q^2,4)/qpochinf(q^4,4)*sum(n,0,inf,(-1)^n*sum(j,-n,n,q^(2*n^2+2*n-2*j^2-j)))");

  b.add("HECKE-E", "theorem: double sum with (q^2; q^2)_n (-q; q)_{2n} denominators", "(q²; q²)_n (−q; q)_{2n}",
        "qpochinf(q^2,2)*qpochinf(a*b,2)/(qpochinf(q^2*a,2)*qpochinf(q^2*b,2))"
        "*sum(n,0,inf,qpoch(q^2/a,2,n)*qpoch(q^2/b,2,n)*qpoch(q,2,n)*(a*b)^n/(qpoch(q^2,2,n)*qpoch(-q,1,2*n)))",
        "sum(n,0,inf,(1-q^(4*n+2))*qpoch(q^2/a,2,n)*qpoch(q^2/b,2,n)*(a*b)^n"
        "/(qpoch(q^2*a,2,n)*qpoch(q^2*b,2,n))*sum(j,-n,n,(-1)^j*q^(2*n^2-j^2)))",
        {"a", "b"}, {"val(a) >= -1", "val(b) >= -1", "val(a*b) >= 1"});
  b.out.back().note = "right side without the factor (q; q^2)_n";
  b.variant_of(Variant::AsPrinted,
               "sum(n,0,inf,(1-q^(4*n+2))*qpoch(q^2/a,2,n)*qpoch(q^2/b,2,n)*qpoch(q,2,n)*(a*b)^n"
               "/(qpoch(q^2*a,2,n)*qpoch(q^2*b,2,n))*sum(j,-n,n,(-1)^j*q^(2*n^2-j^2)))",
               "right side with the factor (q; q^2)_n as printed");
  b.add("S-EVAL", "display: terminating 3phi2 in base q^2 evaluated by S_n", "(−1)ⁿ q^{n²+n} S_n(q)",
        "phi([q^(-2*n), q^(2*n+2), q],[-q, -q^2],2,q^2)", "(-1)^n*q^(n^2+n)*S(n)", {}, {}, {n012})
      .finite = true;
  b.add("ANDREWS-116", "proposition: a, b -> infinity", "q^{4n²+2n−j²}",
        "sum(n,0,inf,qpoch(q,2,n)*q^(2*n^2+2*n)/(qpoch(q^2,2,n)*qpoch(-q,1,2*n)))",
        "1/qpochinf(q^2,2)*sum(n,0,inf,(1-q^(4*n+2))*sum(j,-n,n,(-1)^j*q^(4*n^2+2*n-j^2)))");
  b.add("HECKE-E-1", "display: b -> 0, a = q", "q^{3n²+n−j²}",
        "sum(n,0,inf,(-1)^n*qpoch(q,2,n)*q^(n^2+n)/qpoch(-q,1,2*n))",
        "sum(n,0,inf,(-1)^n*(1-q^(4*n+2))*sum(j,-n,n,(-1)^j*q^(3*n^2+n-j^2)))");

  // Main is HECKE-E at a = b = q. The AS-PRINTED exponent and the guessed
  // repair are report-only.
  const std::string kE2Lhs = "sum(n,0,inf,qpoch(q,2,n)^3*q^(2*n)/(qpoch(q^2,2,n)*qpoch(-q,1,2*n)))";
  b.add("HECKE-E-2", "display: a = b = q", "q^{2n²+n−j}", kE2Lhs,
        "qpochinf(q,2)^2/qpochinf(q^2,2)^2*sum(n,0,inf,(1+q^(2*n+1))/(1-q^(2*n+1))*q^(2*n^2+2*n)"
        "*sum(j,-n,n,(-1)^j*q^(-j^2)))");
  b.out.back().note = "HECKE-E with a = b = q substituted directly";
  b.variant_of(Variant::AsPrinted,
               "qpochinf(q,2)^2/qpochinf(q^2,2)^2*sum(n,0,inf,(1+q^(2*n+1))/(1-q^(2*n+1))"
               "*sum(j,-n,n,(-1)^j*q^(2*n^2+n-j)))",
               "exponent 2n^2+n-j as printed");
  b.variant_of(Variant::Conjectured,
               "qpochinf(q,2)^2/qpochinf(q^2,2)^2*sum(n,0,inf,(1+q^(2*n+1))/(1-q^(2*n+1))"
               "*sum(j,-n,n,(-1)^j*q^(2*n^2+n-j^2)))",
               "exponent 2n^2+n-j^2");

  const std::string kTDiff = "*q^(n^2-2*n)*(q^n*T(n)-T(n-1)))";
  b.add("HECKE-F", "theorem: double sum with (-q; q)_n^2 / (q; q)_{2n}", "qⁿT_n(q)−T_{n−1}(q)",
        "qpochinf(q,1)*qpochinf(a*b/q,1)/(qpochinf(a,1)*qpochinf(b,1))"
        "*sum(n,0,inf,qpoch(-q,1,n)^2*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(a*b/q)^n/qpoch(q,1,2*n))",
        "1 + sum(n,1,inf,(1+q^n)*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(a*b)^n/(qpoch(a,1,n)*qpoch(b,1,n))" + kTDiff,
        {"a", "b"}, {"val(a) >= 1", "val(b) >= 1", "val(a*b) >= 2"});
  b.add("ANDREWS-111", "display: a, b -> infinity", "(1−q^{6n+6}) q^{2n²+n}",
        "sum(n,0,inf,q^(n^2)*qpoch(-q,1,n)^2/qpoch(q,1,2*n))",
        "1/qpochinf(q,1)*sum(n,0,inf,(1-q^(6*n+6))*q^(2*n^2+n)*sum(j,0,n,q^(-j*(j+1)/2)))");
  b.add("HECKE-F-1", "display: b -> 0, a = 1", "(1−q^{6n+2})",
        "sum(n,0,inf,(-1)^n*qpoch(-q,1,n)*q^(n*(n-1)/2)/qpoch(q,2,n))",
        "sum(n,0,inf,(-1)^n*(1-q^(4*n+2))*q^((3*n^2-n)/2)*sum(j,0,n,q^(-j*(j+1)/2)))");
  b.out.back().note = "factor (1 - q^{4n+2})";
  b.variant_of(Variant::AsPrinted,
               "sum(n,0,inf,(-1)^n*(1-q^(6*n+2))*q^((3*n^2-n)/2)*sum(j,0,n,q^(-j*(j+1)/2)))",
               "factor (1 - q^{6n+2}) as printed");
  b.add("HECKE-G", "theorem: double sum with (q; q^2)_n denominators", "(ab/q)ⁿ/(q; q²)_n",
        "qpochinf(q,1)*qpochinf(a*b/q,1)/(qpochinf(a,1)*qpochinf(b,1))"
        "*sum(n,0,inf,qpoch(q/a,1,n)*qpoch(q/b,1,n)*(a*b/q)^n/qpoch(q,2,n))",
        "1 + sum(n,1,inf,(1+q^n)*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(-a*b)^n/(qpoch(a,1,n)*qpoch(b,1,n))" + kTDiff,
        {"a", "b"}, {"val(a) >= 1", "val(b) >= 1", "val(a*b) >= 2"});
  b.add("ANDREWS-110", "display: a, b -> infinity", "(1−q^{6n+6}) q^{2n²+n−j(j+1)/2}",
        "sum(n,0,inf,q^(n^2)/qpoch(q,2,n))",
        "1/qpochinf(q,1)*sum(n,0,inf,(-1)^n*(1-q^(6*n+6))*q^(2*n^2+n)*sum(j,0,n,q^(-j*(j+1)/2)))");
  b.add("HECKE-G-1", "display: b -> 0, a = 1", "(1+q^{6n+2})",
        "sum(n,0,inf,(-1)^n*qpoch(q,1,n)*q^(n*(n-1)/2)/qpoch(q,2,n))",
        "sum(n,1,inf,(1-q^(2*n))*q^((3*n^2-3*n)/2)*(q^n*T(n)-T(n-1)))");
  b.out.back().note = "HECKE-G with b = 0, times (1 - a), at a = 1";
  b.variant_of(Variant::AsPrinted, "sum(n,0,inf,(1+q^(6*n+2))*q^((3*n^2-n)/2)*sum(j,0,n,q^(-j*(j+1)/2)))",
               "single sum over T_n with (1 + q^{6n+2}) as printed");
  b.add("HECKE-H", "theorem: double sum with (q^2; q^2)_n denominators", "(1−q^{2n+1}) q^{j²}",
        "qpochinf(q,1)*qpochinf(a*b,1)/(qpochinf(q*a,1)*qpochinf(q*b,1))"
        "*sum(n,0,inf,qpoch(q/a,1,n)*qpoch(q/b,1,n)*(a*b/q)^n/qpoch(q^2,2,n))",
        "sum(n,0,inf,(1-q^(2*n+1))*qpoch(q/a,1,n)*qpoch(q/b,1,n)*(a*b/q)^n/(qpoch(q*a,1,n)*qpoch(q*b,1,n))"
        "*sum(j,-n,n,(-1)^j*q^(j^2)))",
        {"a", "b"}, {"val(a) >= 0", "val(b) >= 0", "val(a*b) >= 2"});
  b.add("HECKE-H-1", "display: a, b -> infinity", "q^{n²+j²}", "sum(n,0,inf,q^(n^2)/qpoch(q^2,2,n))",
        "1/qpochinf(q,1)*sum(n,0,inf,(1-q^(2*n+1))*q^(n^2)*sum(j,-n,n,(-1)^j*q^(j^2)))");
  b.add("HECKE-H-2", "display: b -> 0, a = -1", "q^{j²+n(n−1)/2}",
        "sum(n,0,inf,(-1)^n*q^(n*(n-1)/2)/qpoch(-q,1,n))",
        "sum(n,0,inf,(-1)^n*(1-q^(2*n+1))*q^(n*(n-1)/2)*sum(j,-n,n,(-1)^j*q^(j^2)))");
  b.add("HECKE-H-3", "display: b -> 0, a = 1", "(−q; q)∞/(q; q)∞", "sum(n,0,inf,q^(n*(n-1)/2)/qpoch(q,1,n))",
        "qpochinf(-q,1)/qpochinf(q,1)*sum(n,0,inf,(1-q^(2*n+1))*q^(n*(n-1)/2)*sum(j,-n,n,(-1)^j*q^(j^2)))");

  // ------------------------------------------------------------ Sears

  const std::string kSearsRhsTail = "*(beta*gamma/d)^n*phi([q^(-n), alpha*q^n, d/beta, d/gamma],"
                                    "[d, d*c/(beta*gamma), q*alpha/c],1,q)";
  b.add("SEARS-43", "display: Sears 4phi3 transformation", "₄φ₃(q^{−n}, αqⁿ, β, γ; c, d, qαβγ/(cd); q, q)",
        "phi([q^(-n), alpha*q^n, beta, gamma],[c, d, q*alpha*beta*gamma/(c*d)],1,q)",
        "qpoch(q*alpha/c,1,n)*qpoch(c*d/(beta*gamma),1,n)/(qpoch(c,1,n)*qpoch(q*alpha*beta*gamma/(c*d),1,n))" +
            kSearsRhsTail,
        {"alpha", "beta", "gamma", "c", "d"},
        {"coeff(q*alpha*beta*gamma/(c*d)) != 1", "coeff(d*c/(beta*gamma)) != 1", "coeff(alpha/c) != 1"}, {n012})
      .finite = true;
  b.out.back().note = "denominator (c, q alpha beta gamma/(cd); q)_n";
  b.variant_of(Variant::AsPrinted,
               "qpoch(q*alpha/c,1,n)*qpoch(c*d/(beta*gamma),1,n)/(qpoch(c,1,n)*qpoch(q*alpha*beta*gamma,1,n))" +
                   kSearsRhsTail,
               "denominator (c, q alpha beta gamma; q)_n as printed");
  b.add("SEARS-32", "display: Sears transformation, gamma = 0", "(−c)ⁿ q^{n(n−1)/2}",
        "phi([q^(-n), alpha*q^n, beta],[c, d],1,q)",
        "(-c)^n*q^(n*(n-1)/2)*qpoch(q*alpha/c,1,n)/qpoch(c,1,n)"
        "*phi([q^(-n), alpha*q^n, d/beta],[d, q*alpha/c],1,q*beta/c)",
        {"alpha", "beta", "c", "d"}, {"coeff(alpha/c) != 1"}, {n012})
      .finite = true;

  return std::move(b.out);
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Main:
      return "MAIN";
    case Variant::AsPrinted:
      return "AS-PRINTED";
    case Variant::Conjectured:
      return "CONJECTURED";
  }
  return "?";
}

const std::vector<IdentitySpec>& builtin_corpus() {
  static const std::vector<IdentitySpec> corpus = build();
  return corpus;
}

std::vector<const IdentitySpec*> lookup(const std::string& id) {
  std::vector<const IdentitySpec*> out;
  for (const auto& s : builtin_corpus())
    if (s.id == id) out.push_back(&s);
  return out;
}

const std::vector<Mutation>& mutation_list() {
  static const std::vector<Mutation> list = {
      {"HECKE-MAIN", "(1-q^(2*n+1))", "(1+q^(2*n+1))", "sign flip in the row factor"},
      {"HECKE-E-1", "q^(3*n^2+n-j^2)", "q^(3*n^2+n-j)", "j^2 replaced by j"},
      {"PSI-CUBE", "q^(2*n^2+2*n-2*j^2-j)", "q^(2*n^2+3*n-2*j^2-j)", "exponent 2n replaced by 3n"},
      {"ADH", "(1-q^(2*n+1))", "(1+q^(2*n+1))", "sign flip in the row factor"},
      {"ROGERS-65", "-q*r", "q*r", "sign flip in a numerator parameter"},
      {"WATSON", "-q*r", "q*r", "sign flip in a numerator parameter"},
      {"SQUARES-4", "1 + 8*sum", "1 - 8*sum", "sign flip of the sum"},
      {"ANDREWS-3TRI", "j*(j+1)/2", "j*(j-1)/2", "triangular exponent shifted"},
      {"TRIP-A", "(1-q^(2*n+1))", "(1+q^(2*n+1))", "sign flip in the row factor"},
      {"GEN-TRANS-B", "(-alpha*a*b/q)^n", "(alpha*a*b/q)^n", "sign flip of the power"},
  };
  return list;
}

IdentitySpec apply_mutation(const Mutation& m) {
  auto entries = lookup(m.id);
  if (entries.empty()) throw std::invalid_argument("unknown corpus id " + m.id);
  IdentitySpec s = *entries.front();
  for (auto* side : {&s.rhs, &s.lhs}) {
    auto pos = side->find(m.from);
    if (pos == std::string::npos) continue;
    side->replace(pos, m.from.size(), m.to);
    return s;
  }
  throw std::invalid_argument("mutation text not found in " + m.id);
}

}  // namespace qseries::corpus
