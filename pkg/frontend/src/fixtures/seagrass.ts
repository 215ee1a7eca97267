// Recorded elicitation session for the seagrass case study, as exported by
// the service transcript endpoint. The demo screen replays these events
// through a live service; regenerate by exporting a transcript and pasting
// it between the backticks.

export const SEAGRASS_TRANSCRIPT = `{"alpha":0.05,"family":{"name":"simplex","power":null},"scenarios":{"covariate_names":["din","tss"],"covariates":[[0.0001,0.1],[0.05,0.1],[0.5,0.1],[0.0001,12.25],[0.0001,50.0],[0.05,50.0],[0.5,50.0]],"descriptions":["seagrass cover at DIN=0.0001 mg/L, TSS=0.1 mg/L","seagrass cover at DIN=0.05 mg/L, TSS=0.1 mg/L","seagrass cover at DIN=0.5 mg/L, TSS=0.1 mg/L","seagrass cover at DIN=0.0001 mg/L, TSS=12.25 mg/L","seagrass cover at DIN=0.0001 mg/L, TSS=50 mg/L","seagrass cover at DIN=0.05 mg/L, TSS=50 mg/L","seagrass cover at DIN=0.5 mg/L, TSS=50 mg/L"],"families":[{"name":"simplex","power":null}],"known_phi":null,"link":"logit"},"schema":"vineprior-transcript","seed":20260815,"version":1}
{"deltas":{"pending_dispersion":{"dof":14.299999999999294,"mean_scale":8.00666307692303e-07,"phi":null,"rate":117.99999999999346}},"inputs":{"draws":10,"lower1":0.009606480665389917,"lower2":0.00842631336973926,"mean0":0.01,"prob1":0.3333333333333333,"prob2":0.9},"op":"assess_dispersion","phase":{"name":"setup"},"revision":false,"seq":0,"timestamp":0}
{"deltas":{"dispersion":{"dof":14.299999999999294,"draws":10,"lower1":0.009606480665389917,"lower2":0.00842631336973926,"mean0":0.01,"mean_scale":8.00666307692303e-07,"phi":null,"prob1":0.3333333333333333,"prob2":0.9,"rate":117.99999999999346}},"inputs":{},"op":"accept_dispersion","phase":{"name":"random_component"},"revision":false,"seq":1,"timestamp":1}
{"deltas":{"pending_marginal":{"index":0,"loc":-1.1102230246251565e-16,"scale":0.04819075127522933}},"inputs":{"index":0,"lower":0.3,"prob":0.8,"synthetic":true,"upper":0.7},"op":"assess_marginal","phase":{"name":"marginals","scenario":0},"revision":false,"seq":2,"timestamp":2}
{"deltas":{"index":0,"loc":-1.1102230246251565e-16,"scale":0.04819075127522933},"inputs":{},"op":"accept_marginal","phase":{"name":"marginals","scenario":0},"revision":false,"seq":3,"timestamp":3}
{"deltas":{"pending_marginal":{"index":1,"loc":-0.8673005276940532,"scale":0.050492944651918066}},"inputs":{"index":1,"lower":0.15,"prob":0.8,"synthetic":true,"upper":0.5},"op":"assess_marginal","phase":{"name":"marginals","scenario":1},"revision":false,"seq":4,"timestamp":4}
{"deltas":{"index":1,"loc":-0.8673005276940532,"scale":0.050492944651918066},"inputs":{},"op":"accept_marginal","phase":{"name":"marginals","scenario":1},"revision":false,"seq":5,"timestamp":5}
{"deltas":{"pending_marginal":{"index":2,"loc":-1.8958684197768219,"scale":0.0738051720904444}},"inputs":{"index":2,"lower":0.05,"prob":0.8,"synthetic":true,"upper":0.3},"op":"assess_marginal","phase":{"name":"marginals","scenario":2},"revision":false,"seq":6,"timestamp":6}
{"deltas":{"index":2,"loc":-1.8958684197768219,"scale":0.0738051720904444},"inputs":{},"op":"accept_marginal","phase":{"name":"marginals","scenario":2},"revision":false,"seq":7,"timestamp":7}
{"deltas":{"pending_marginal":{"index":3,"loc":-0.49041462650586315,"scale":0.05387544901751247}},"inputs":{"index":3,"lower":0.2,"prob":0.8,"synthetic":true,"upper":0.6},"op":"assess_marginal","phase":{"name":"marginals","scenario":3},"revision":false,"seq":8,"timestamp":8}
{"deltas":{"index":3,"loc":-0.49041462650586315,"scale":0.05387544901751247},"inputs":{},"op":"accept_marginal","phase":{"name":"marginals","scenario":3},"revision":false,"seq":9,"timestamp":9}
{"deltas":{"pending_marginal":{"index":4,"loc":-1.530693121887714,"scale":0.05578937275638582}},"inputs":{"index":4,"lower":0.08,"prob":0.8,"synthetic":true,"upper":0.35},"op":"assess_marginal","phase":{"name":"marginals","scenario":4},"revision":false,"seq":10,"timestamp":10}
{"deltas":{"index":4,"loc":-1.530693121887714,"scale":0.05578937275638582},"inputs":{},"op":"accept_marginal","phase":{"name":"marginals","scenario":4},"revision":false,"seq":11,"timestamp":11}
{"deltas":{"pending_marginal":{"index":5,"loc":-2.1383330595080277,"scale":0.07256461870866007}},"inputs":{"index":5,"lower":0.04,"prob":0.8,"synthetic":true,"upper":0.25},"op":"assess_marginal","phase":{"name":"marginals","scenario":5},"revision":false,"seq":12,"timestamp":12}
{"deltas":{"index":5,"loc":-2.1383330595080277,"scale":0.07256461870866007},"inputs":{},"op":"accept_marginal","phase":{"name":"marginals","scenario":5},"revision":false,"seq":13,"timestamp":13}
{"deltas":{"pending_marginal":{"index":6,"loc":-3.164860452761348,"scale":0.13731598522806654}},"inputs":{"index":6,"lower":0.01,"prob":0.8,"synthetic":true,"upper":0.15},"op":"assess_marginal","phase":{"name":"marginals","scenario":6},"revision":false,"seq":14,"timestamp":14}
{"deltas":{"index":6,"loc":-3.164860452761348,"scale":0.13731598522806654},"inputs":{},"op":"accept_marginal","phase":{"name":"marginals","scenario":6},"revision":false,"seq":15,"timestamp":15}
{"deltas":{"eta":0.2813312228340199,"level":1,"mean":0.5698725606915728,"scenario":0},"inputs":{"mode":"unit","prob":0.8,"side":"upper","synthetic":true},"op":"choose_conditioning","phase":{"cell":null,"level":1,"name":"vine_level"},"revision":false,"seq":16,"timestamp":16}
{"deltas":{"pending_conditional":{"cell":1,"conditional_variance":0.04617509801204502,"level":1,"median":0.3136544406098132,"partial_corr":0.2924275308356393,"scale_entry":0.014424987815131999}},"inputs":{"cell":1,"median":0.3136544406098132,"synthetic":true},"op":"assess_conditional","phase":{"cell":1,"level":1,"name":"vine_level"},"revision":false,"seq":17,"timestamp":17}
{"deltas":{"cell":1,"conditional_variance":0.04617509801204502,"level":1,"median":0.3136544406098132,"partial_corr":0.2924275308356393,"scale_entry":0.014424987815131999},"inputs":{},"op":"accept_conditional","phase":{"cell":1,"level":1,"name":"vine_level"},"revision":false,"seq":18,"timestamp":18}
{"deltas":{"pending_conditional":{"cell":2,"conditional_variance":0.06552850484553056,"level":1,"median":0.1443923414361617,"partial_corr":0.33487625097383134,"scale_entry":0.019971449937034633}},"inputs":{"cell":2,"median":0.1443923414361617,"synthetic":true},"op":"assess_conditional","phase":{"cell":2,"level":1,"name":"vine_level"},"revision":false,"seq":19,"timestamp":19}
{"deltas":{"cell":2,"conditional_variance":0.06552850484553056,"level":1,"median":0.1443923414361617,"partial_corr":0.33487625097383134,"scale_entry":0.019971449937034633},"inputs":{},"op":"accept_conditional","phase":{"cell":2,"level":1,"name":"vine_level"},"revision":false,"seq":20,"timestamp":20}
{"deltas":{"pending_conditional":{"cell":3,"conditional_variance":0.05097021048027902,"level":1,"median":0.39619646548167925,"partial_corr":0.23221776818184423,"scale_entry":0.011832397379357587}},"inputs":{"cell":3,"median":0.39619646548167925,"synthetic":true},"op":"assess_conditional","phase":{"cell":3,"level":1,"name":"vine_level"},"revision":false,"seq":21,"timestamp":21}
{"deltas":{"cell":3,"conditional_variance":0.05097021048027902,"level":1,"median":0.39619646548167925,"partial_corr":0.23221776818184423,"scale_entry":0.011832397379357587},"inputs":{},"op":"accept_conditional","phase":{"cell":3,"level":1,"name":"vine_level"},"revision":false,"seq":22,"timestamp":22}
{"deltas":{"pending_conditional":{"cell":4,"conditional_variance":0.051718774009934194,"level":1,"median":0.1901665198851588,"partial_corr":0.2701179269019805,"scale_entry":0.014005899176115414}},"inputs":{"cell":4,"median":0.1901665198851588,"synthetic":true},"op":"assess_conditional","phase":{"cell":4,"level":1,"name":"vine_level"},"revision":false,"seq":23,"timestamp":23}
{"deltas":{"cell":4,"conditional_variance":0.051718774009934194,"level":1,"median":0.1901665198851588,"partial_corr":0.2701179269019805,"scale_entry":0.014005899176115414},"inputs":{},"op":"accept_conditional","phase":{"cell":4,"level":1,"name":"vine_level"},"revision":false,"seq":24,"timestamp":24}
{"deltas":{"pending_conditional":{"cell":5,"conditional_variance":0.06662712165011808,"level":1,"median":0.11510921026423587,"partial_corr":0.2860482169220134,"scale_entry":0.016915449859391935}},"inputs":{"cell":5,"median":0.11510921026423587,"synthetic":true},"op":"assess_conditional","phase":{"cell":5,"level":1,"name":"vine_level"},"revision":false,"seq":25,"timestamp":25}
{"deltas":{"cell":5,"conditional_variance":0.06662712165011808,"level":1,"median":0.11510921026423587,"partial_corr":0.2860482169220134,"scale_entry":0.016915449859391935},"inputs":{},"op":"accept_conditional","phase":{"cell":5,"level":1,"name":"vine_level"},"revision":false,"seq":26,"timestamp":26}
{"deltas":{"pending_conditional":{"cell":6,"conditional_variance":0.12160143010535246,"level":1,"median":0.04723612759987811,"partial_corr":0.33829104119145315,"scale_entry":0.027519015558693134}},"inputs":{"cell":6,"median":0.04723612759987811,"synthetic":true},"op":"assess_conditional","phase":{"cell":6,"level":1,"name":"vine_level"},"revision":false,"seq":27,"timestamp":27}
{"deltas":{"cell":6,"conditional_variance":0.12160143010535246,"level":1,"median":0.04723612759987811,"partial_corr":0.33829104119145315,"scale_entry":0.027519015558693134},"inputs":{},"op":"accept_conditional","phase":{"cell":6,"level":1,"name":"vine_level"},"revision":false,"seq":28,"timestamp":28}
{"deltas":{"eta":-1.058474180410475,"level":2,"mean":0.2576011487615491,"scenario":1},"inputs":{"mode":"unit","prob":0.8,"side":"lower","synthetic":true},"op":"choose_conditioning","phase":{"cell":null,"level":2,"name":"vine_level"},"revision":false,"seq":29,"timestamp":29}
{"deltas":{"pending_conditional":{"cell":2,"conditional_variance":0.05939226919908566,"level":2,"median":0.1572427038292814,"partial_corr":-0.30601018765166077,"scale_entry":-0.010854669422729783}},"inputs":{"cell":2,"median":0.1572427038292814,"synthetic":true},"op":"assess_conditional","phase":{"cell":2,"level":2,"name":"vine_level"},"revision":false,"seq":30,"timestamp":30}
{"deltas":{"cell":2,"conditional_variance":0.05939226919908566,"level":2,"median":0.1572427038292814,"partial_corr":-0.30601018765166077,"scale_entry":-0.010854669422729783},"inputs":{},"op":"accept_conditional","phase":{"cell":2,"level":2,"name":"vine_level"},"revision":false,"seq":31,"timestamp":31}
{"deltas":{"pending_conditional":{"cell":3,"conditional_variance":0.04877935913119193,"level":2,"median":0.41063191900575136,"partial_corr":-0.2073233616844523,"scale_entry":-0.006516166916139884}},"inputs":{"cell":3,"median":0.41063191900575136,"synthetic":true},"op":"assess_conditional","phase":{"cell":3,"level":2,"name":"vine_level"},"revision":false,"seq":32,"timestamp":32}
{"deltas":{"cell":3,"conditional_variance":0.04877935913119193,"level":2,"median":0.41063191900575136,"partial_corr":-0.2073233616844523,"scale_entry":-0.006516166916139884},"inputs":{},"op":"accept_conditional","phase":{"cell":3,"level":2,"name":"vine_level"},"revision":false,"seq":33,"timestamp":33}
{"deltas":{"pending_conditional":{"cell":4,"conditional_variance":0.0486267430351225,"level":2,"median":0.20138402541756573,"partial_corr":-0.2445106652351488,"scale_entry":-0.007756441941495427}},"inputs":{"cell":4,"median":0.20138402541756573,"synthetic":true},"op":"assess_conditional","phase":{"cell":4,"level":2,"name":"vine_level"},"revision":false,"seq":34,"timestamp":34}
{"deltas":{"cell":4,"conditional_variance":0.0486267430351225,"level":2,"median":0.20138402541756573,"partial_corr":-0.2445106652351488,"scale_entry":-0.007756441941495427},"inputs":{},"op":"accept_conditional","phase":{"cell":4,"level":2,"name":"vine_level"},"revision":false,"seq":35,"timestamp":35}
{"deltas":{"pending_conditional":{"cell":5,"conditional_variance":0.0621455674052409,"level":2,"median":0.12414066450637865,"partial_corr":-0.2593515231224917,"scale_entry":-0.009321958182110885}},"inputs":{"cell":5,"median":0.12414066450637865,"synthetic":true},"op":"assess_conditional","phase":{"cell":5,"level":2,"name":"vine_level"},"revision":false,"seq":36,"timestamp":36}
{"deltas":{"cell":5,"conditional_variance":0.0621455674052409,"level":2,"median":0.12414066450637865,"partial_corr":-0.2593515231224917,"scale_entry":-0.009321958182110885},"inputs":{},"op":"accept_conditional","phase":{"cell":5,"level":2,"name":"vine_level"},"revision":false,"seq":37,"timestamp":37}
{"deltas":{"pending_conditional":{"cell":6,"conditional_variance":0.11014137172237216,"level":2,"median":0.053808381522374424,"partial_corr":-0.3069898904057447,"scale_entry":-0.014766384940517336}},"inputs":{"cell":6,"median":0.053808381522374424,"synthetic":true},"op":"assess_conditional","phase":{"cell":6,"level":2,"name":"vine_level"},"revision":false,"seq":38,"timestamp":38}
{"deltas":{"cell":6,"conditional_variance":0.11014137172237216,"level":2,"median":0.053808381522374424,"partial_corr":-0.3069898904057447,"scale_entry":-0.014766384940517336},"inputs":{},"op":"accept_conditional","phase":{"cell":6,"level":2,"name":"vine_level"},"revision":false,"seq":39,"timestamp":39}
{"deltas":{"eta":-1.3665676175883477,"level":3,"mean":0.20317496552489675,"scenario":2},"inputs":{"mode":"unit","prob":0.8,"side":"upper","synthetic":true},"op":"choose_conditioning","phase":{"cell":null,"level":3,"name":"vine_level"},"revision":false,"seq":40,"timestamp":40}
{"deltas":{"pending_conditional":{"cell":3,"conditional_variance":0.04714210920310007,"level":3,"median":0.42323719699755286,"partial_corr":0.18320589546358748,"scale_entry":0.018431223403353347}},"inputs":{"cell":3,"median":0.42323719699755286,"synthetic":true},"op":"assess_conditional","phase":{"cell":3,"level":3,"name":"vine_level"},"revision":false,"seq":41,"timestamp":41}
{"deltas":{"cell":3,"conditional_variance":0.04714210920310007,"level":3,"median":0.42323719699755286,"partial_corr":0.18320589546358748,"scale_entry":0.018431223403353347},"inputs":{},"op":"accept_conditional","phase":{"cell":3,"level":3,"name":"vine_level"},"revision":false,"seq":42,"timestamp":42}
{"deltas":{"pending_conditional":{"cell":4,"conditional_variance":0.04627652095949426,"level":3,"median":0.21156159759134696,"partial_corr":0.21984513509126963,"scale_entry":0.02197485484561834}},"inputs":{"cell":4,"median":0.21156159759134696,"synthetic":true},"op":"assess_conditional","phase":{"cell":4,"level":3,"name":"vine_level"},"revision":false,"seq":43,"timestamp":43}
{"deltas":{"cell":4,"conditional_variance":0.04627652095949426,"level":3,"median":0.21156159759134696,"partial_corr":0.21984513509126963,"scale_entry":0.02197485484561834},"inputs":{},"op":"accept_conditional","phase":{"cell":4,"level":3,"name":"vine_level"},"revision":false,"seq":44,"timestamp":44}
{"deltas":{"pending_conditional":{"cell":5,"conditional_variance":0.058747843141987346,"level":3,"median":0.13249360014029093,"partial_corr":0.2338239468550082,"scale_entry":0.026459798466949437}},"inputs":{"cell":5,"median":0.13249360014029093,"synthetic":true},"op":"assess_conditional","phase":{"cell":5,"level":3,"name":"vine_level"},"revision":false,"seq":45,"timestamp":45}
{"deltas":{"cell":5,"conditional_variance":0.058747843141987346,"level":3,"median":0.13249360014029093,"partial_corr":0.2338239468550082,"scale_entry":0.026459798466949437},"inputs":{},"op":"accept_conditional","phase":{"cell":5,"level":3,"name":"vine_level"},"revision":false,"seq":46,"timestamp":46}
{"deltas":{"pending_conditional":{"cell":6,"conditional_variance":0.10163856100116933,"level":3,"median":0.06015202024391514,"partial_corr":0.27784719405173924,"scale_entry":0.04226259769748215}},"inputs":{"cell":6,"median":0.06015202024391514,"synthetic":true},"op":"assess_conditional","phase":{"cell":6,"level":3,"name":"vine_level"},"revision":false,"seq":47,"timestamp":47}
{"deltas":{"cell":6,"conditional_variance":0.10163856100116933,"level":3,"median":0.06015202024391514,"partial_corr":0.27784719405173924,"scale_entry":0.04226259769748215},"inputs":{},"op":"accept_conditional","phase":{"cell":6,"level":3,"name":"vine_level"},"revision":false,"seq":48,"timestamp":48}
{"deltas":{"eta":-0.5877517948840318,"level":4,"mean":0.3571508630542368,"scenario":3},"inputs":{"mode":"unit","prob":0.8,"side":"lower","synthetic":true},"op":"choose_conditioning","phase":{"cell":null,"level":4,"name":"vine_level"},"revision":false,"seq":49,"timestamp":49}
{"deltas":{"pending_conditional":{"cell":4,"conditional_variance":0.04449953113905601,"level":4,"median":0.22071318586590508,"partial_corr":-0.19595760335587878,"scale_entry":-0.0011494163158381212}},"inputs":{"cell":4,"median":0.22071318586590508,"synthetic":true},"op":"assess_conditional","phase":{"cell":4,"level":4,"name":"vine_level"},"revision":false,"seq":50,"timestamp":50}
{"deltas":{"cell":4,"conditional_variance":0.04449953113905601,"level":4,"median":0.22071318586590508,"partial_corr":-0.19595760335587878,"scale_entry":-0.0011494163158381212},"inputs":{},"op":"accept_conditional","phase":{"cell":4,"level":4,"name":"vine_level"},"revision":false,"seq":51,"timestamp":51}
{"deltas":{"pending_conditional":{"cell":5,"conditional_variance":0.05617547049421793,"level":4,"median":0.14014452735239077,"partial_corr":-0.20925265556800035,"scale_entry":-0.0013668188450584719}},"inputs":{"cell":5,"median":0.14014452735239077,"synthetic":true},"op":"assess_conditional","phase":{"cell":5,"level":4,"name":"vine_level"},"revision":false,"seq":52,"timestamp":52}
{"deltas":{"cell":5,"conditional_variance":0.05617547049421793,"level":4,"median":0.14014452735239077,"partial_corr":-0.20925265556800035,"scale_entry":-0.0013668188450584719},"inputs":{},"op":"accept_conditional","phase":{"cell":5,"level":4,"name":"vine_level"},"revision":false,"seq":53,"timestamp":53}
{"deltas":{"pending_conditional":{"cell":6,"conditional_variance":0.09526581706377737,"level":4,"median":0.06620273790257765,"partial_corr":-0.25039980158275454,"scale_entry":-0.00183411403217745}},"inputs":{"cell":6,"median":0.06620273790257765,"synthetic":true},"op":"assess_conditional","phase":{"cell":6,"level":4,"name":"vine_level"},"revision":false,"seq":54,"timestamp":54}
{"deltas":{"cell":6,"conditional_variance":0.09526581706377737,"level":4,"median":0.06620273790257765,"partial_corr":-0.25039980158275454,"scale_entry":-0.00183411403217745},"inputs":{},"op":"accept_conditional","phase":{"cell":6,"level":4,"name":"vine_level"},"revision":false,"seq":55,"timestamp":55}
{"deltas":{"eta":-0.9911729287193137,"level":5,"mean":0.27068046452878725,"scenario":4},"inputs":{"mode":"unit","prob":0.8,"side":"upper","synthetic":true},"op":"choose_conditioning","phase":{"cell":null,"level":5,"name":"vine_level"},"revision":false,"seq":56,"timestamp":56}
{"deltas":{"pending_conditional":{"cell":5,"conditional_variance":0.0542429681417083,"level":5,"median":0.14707201138627124,"partial_corr":0.18547554521258738,"scale_entry":0.02287595570282213}},"inputs":{"cell":5,"median":0.14707201138627124,"synthetic":true},"op":"assess_conditional","phase":{"cell":5,"level":5,"name":"vine_level"},"revision":false,"seq":57,"timestamp":57}
{"deltas":{"cell":5,"conditional_variance":0.0542429681417083,"level":5,"median":0.14707201138627124,"partial_corr":0.18547554521258738,"scale_entry":0.02287595570282213},"inputs":{},"op":"accept_conditional","phase":{"cell":5,"level":5,"name":"vine_level"},"revision":false,"seq":58,"timestamp":58}
{"deltas":{"pending_conditional":{"cell":6,"conditional_variance":0.090472493684785,"level":5,"median":0.07190349776555155,"partial_corr":0.22431060999939142,"scale_entry":0.03639096182198164}},"inputs":{"cell":6,"median":0.07190349776555155,"synthetic":true},"op":"assess_conditional","phase":{"cell":6,"level":5,"name":"vine_level"},"revision":false,"seq":59,"timestamp":59}
{"deltas":{"cell":6,"conditional_variance":0.090472493684785,"level":5,"median":0.07190349776555155,"partial_corr":0.22431060999939142,"scale_entry":0.03639096182198164},"inputs":{},"op":"accept_conditional","phase":{"cell":6,"level":5,"name":"vine_level"},"revision":false,"seq":60,"timestamp":60}
{"deltas":{"eta":-2.0562276776236006,"level":6,"mean":0.11342461999835214,"scenario":5},"inputs":{"mode":"unit","prob":0.8,"side":"lower","synthetic":true},"op":"choose_conditioning","phase":{"cell":null,"level":6,"name":"vine_level"},"revision":false,"seq":61,"timestamp":61}
{"deltas":{"pending_conditional":{"cell":6,"conditional_variance":0.08687787006240302,"level":6,"median":0.0772027013658625,"partial_corr":-0.19932805615492213,"scale_entry":0.01532966755701006}},"inputs":{"cell":6,"median":0.0772027013658625,"synthetic":true},"op":"assess_conditional","phase":{"cell":6,"level":6,"name":"vine_level"},"revision":false,"seq":62,"timestamp":62}
{"deltas":{"cell":6,"conditional_variance":0.08687787006240302,"level":6,"median":0.0772027013658625,"partial_corr":-0.19932805615492213,"scale_entry":0.01532966755701006},"inputs":{},"op":"accept_conditional","phase":{"cell":6,"level":6,"name":"vine_level"},"revision":false,"seq":63,"timestamp":63}
{"deltas":{"prior":{"coef_loc":[-2.275719708885557,-1.334795380140985,-0.04663857425331537,-0.0007764340085111245,-0.19119444339054625,0.00041956833428981934,-1.0183069101959009e-05],"coef_scale":[[0.17443698952285475,0.22240525271690212,-0.014726114456993924,-0.003805821796257394,0.04619065050705315,0.0002551094082046456,-1.6280196308113015e-05],[0.22240525271690212,0.3335881286223373,-0.020517773874454512,-0.005769637162372528,0.07031599946230258,0.00036187457769862677,-2.499226157662451e-05],[-0.014726114456993924,-0.020517773874454512,0.004354912428427054,0.0009477262350499466,-0.004439963419189303,-7.661178782811197e-05,4.084367576418296e-06],[-0.003805821796257394,-0.005769637162372528,0.0009477262350499466,0.0002584517324674184,-0.0012023024532481393,-1.5907184632691858e-05,1.0901560816439763e-06],[0.04619065050705315,0.07031599946230258,-0.004439963419189303,-0.0012023024532481393,0.014994883326433816,7.934805852739877e-05,-5.286491625036714e-06],[0.0002551094082046456,0.00036187457769862677,-7.661178782811197e-05,-1.5907184632691858e-05,7.934805852739877e-05,1.3693755963965765e-06,-6.938334249184923e-08],[-1.6280196308113015e-05,-2.499226157662451e-05,4.084367576418296e-06,1.0901560816439763e-06,-5.286491625036714e-06,-6.938334249184923e-08,4.671484703465478e-09]],"dispersion_ratio":1.0,"dof":14.299999999999294,"family":"simplex","names":["intercept","log10_din","tss","log10_din:tss","log10_din^2","tss^2","log10_din^2:tss^2"],"phi":null,"projector":[[1.0000000000000144,-1.6876009461032378e-14,1.2435004224723748e-14,-1.3541690920623247e-14,-1.756442560796783e-15,1.74266979705823e-14,-1.507295050974609e-14],[-2.3696122544521763e-14,1.000000000000014,-1.5321269588119953e-14,2.5077271127789914e-14,1.822049093468702e-15,-2.719087192148492e-14,2.4235181919045358e-14],[3.8920144316625366e-14,-3.180020350483666e-14,1.0000000000000302,-3.991091598459684e-14,-3.1877226915186014e-15,4.4399233593941856e-14,-3.933606887529123e-14],[-4.519794911603259e-15,1.2876906572284463e-14,-1.0188573075498031e-14,1.0000000000000024,1.1603131649939868e-15,-8.195836587523986e-15,6.65995578998102e-15],[1.473994537537493e-14,-1.4262896419481308e-14,1.1733669591507123e-14,-1.5575726588740845e-14,0.9999999999999989,1.5784248907912968e-14,-1.3494413919623582e-14],[6.560814819783347e-14,-6.766550507646347e-14,5.962064968839252e-14,-6.219100740392575e-14,-9.062786346767552e-15,1.0000000000000933,-8.195730065375838e-14],[-2.478301789751119e-14,3.7391621647441335e-14,-2.893175001449827e-14,2.0357482289785763e-14,6.132563268939267e-15,-5.310710203931901e-14,1.0000000000000473]],"rate":117.99999999999346,"truncation":null}},"inputs":{"design":{"matrix":[[1.0,-4.0,0.1,-0.4,16.0,0.010000000000000002,0.16000000000000003],[1.0,-1.3010299956639813,0.1,-0.13010299956639812,1.692679049617419,0.010000000000000002,0.016926790496174193],[1.0,-0.3010299956639812,0.1,-0.03010299956639812,0.09061905828945654,0.010000000000000002,0.0009061905828945656],[1.0,-4.0,12.25,-49.0,16.0,150.0625,2401.0],[1.0,-4.0,50.0,-200.0,16.0,2500.0,40000.0],[1.0,-1.3010299956639813,50.0,-65.05149978319906,1.692679049617419,2500.0,4231.697624043548],[1.0,-0.3010299956639812,50.0,-15.05149978319906,0.09061905828945654,2500.0,226.54764572364138]],"names":["intercept","log10_din","tss","log10_din:tss","log10_din^2","tss^2","log10_din^2:tss^2"]}},"op":"induce","phase":{"name":"dependence_complete"},"revision":false,"seq":64,"timestamp":64}
{"snapshot":{"dispersion":{"dof":14.299999999999294,"draws":10,"lower1":0.009606480665389917,"lower2":0.00842631336973926,"mean0":0.01,"mean_scale":8.00666307692303e-07,"phi":null,"prob1":0.3333333333333333,"prob2":0.9,"rate":117.99999999999346},"dispersion_partial":null,"family":{"name":"simplex","power":null},"phase":{"name":"concluded"},"prior":{"coef_loc":[-2.275719708885557,-1.334795380140985,-0.04663857425331537,-0.0007764340085111245,-0.19119444339054625,0.00041956833428981934,-1.0183069101959009e-05],"coef_scale":[[0.17443698952285475,0.22240525271690212,-0.014726114456993924,-0.003805821796257394,0.04619065050705315,0.0002551094082046456,-1.6280196308113015e-05],[0.22240525271690212,0.3335881286223373,-0.020517773874454512,-0.005769637162372528,0.07031599946230258,0.00036187457769862677,-2.499226157662451e-05],[-0.014726114456993924,-0.020517773874454512,0.004354912428427054,0.0009477262350499466,-0.004439963419189303,-7.661178782811197e-05,4.084367576418296e-06],[-0.003805821796257394,-0.005769637162372528,0.0009477262350499466,0.0002584517324674184,-0.0012023024532481393,-1.5907184632691858e-05,1.0901560816439763e-06],[0.04619065050705315,0.07031599946230258,-0.004439963419189303,-0.0012023024532481393,0.014994883326433816,7.934805852739877e-05,-5.286491625036714e-06],[0.0002551094082046456,0.00036187457769862677,-7.661178782811197e-05,-1.5907184632691858e-05,7.934805852739877e-05,1.3693755963965765e-06,-6.938334249184923e-08],[-1.6280196308113015e-05,-2.499226157662451e-05,4.084367576418296e-06,1.0901560816439763e-06,-5.286491625036714e-06,-6.938334249184923e-08,4.671484703465478e-09]],"dispersion_ratio":1.0,"dof":14.299999999999294,"family":"simplex","names":["intercept","log10_din","tss","log10_din:tss","log10_din^2","tss^2","log10_din^2:tss^2"],"phi":null,"projector":[[1.0000000000000144,-1.6876009461032378e-14,1.2435004224723748e-14,-1.3541690920623247e-14,-1.756442560796783e-15,1.74266979705823e-14,-1.507295050974609e-14],[-2.3696122544521763e-14,1.000000000000014,-1.5321269588119953e-14,2.5077271127789914e-14,1.822049093468702e-15,-2.719087192148492e-14,2.4235181919045358e-14],[3.8920144316625366e-14,-3.180020350483666e-14,1.0000000000000302,-3.991091598459684e-14,-3.1877226915186014e-15,4.4399233593941856e-14,-3.933606887529123e-14],[-4.519794911603259e-15,1.2876906572284463e-14,-1.0188573075498031e-14,1.0000000000000024,1.1603131649939868e-15,-8.195836587523986e-15,6.65995578998102e-15],[1.473994537537493e-14,-1.4262896419481308e-14,1.1733669591507123e-14,-1.5575726588740845e-14,0.9999999999999989,1.5784248907912968e-14,-1.3494413919623582e-14],[6.560814819783347e-14,-6.766550507646347e-14,5.962064968839252e-14,-6.219100740392575e-14,-9.062786346767552e-15,1.0000000000000933,-8.195730065375838e-14],[-2.478301789751119e-14,3.7391621647441335e-14,-2.893175001449827e-14,2.0357482289785763e-14,6.132563268939267e-15,-5.310710203931901e-14,1.0000000000000473]],"rate":117.99999999999346,"truncation":null},"truncation":null,"vine":{"active_level":null,"completed_level":6,"cond_eta":[0.2813312228340199,-1.058474180410475,-1.3665676175883477,-0.5877517948840318,-0.9911729287193137,-2.0562276776236006,null],"loc":[-1.1102230246251565e-16,-0.8673005276940532,-1.8958684197768219,-0.49041462650586315,-1.530693121887714,-2.1383330595080277,-3.164860452761348],"medians":{"1:1":0.3136544406098132,"1:2":0.1443923414361617,"1:3":0.39619646548167925,"1:4":0.1901665198851588,"1:5":0.11510921026423587,"1:6":0.04723612759987811,"2:2":0.1572427038292814,"2:3":0.41063191900575136,"2:4":0.20138402541756573,"2:5":0.12414066450637865,"2:6":0.053808381522374424,"3:3":0.42323719699755286,"3:4":0.21156159759134696,"3:5":0.13249360014029093,"3:6":0.06015202024391514,"4:4":0.22071318586590508,"4:5":0.14014452735239077,"4:6":0.06620273790257765,"5:5":0.14707201138627124,"5:6":0.07190349776555155,"6:6":0.0772027013658625},"n":7,"partials":[[null,0.2924275308356393,0.33487625097383134,0.23221776818184423,0.2701179269019805,0.2860482169220134,0.33829104119145315],[null,null,-0.30601018765166077,-0.2073233616844523,-0.2445106652351488,-0.2593515231224917,-0.3069898904057447],[null,null,null,0.18320589546358748,0.21984513509126963,0.2338239468550082,0.27784719405173924],[null,null,null,null,-0.19595760335587878,-0.20925265556800035,-0.25039980158275454],[null,null,null,null,null,0.18547554521258738,0.22431060999939142],[null,null,null,null,null,null,-0.19932805615492213],[null,null,null,null,null,null,null]],"scale":[[0.04819075127522933,0.014424987815131999,0.019971449937034633,0.011832397379357587,0.014005899176115414,0.016915449859391935,0.027519015558693134],[0.014424987815131999,0.050492944651918066,-0.010854669422729783,-0.006516166916139884,-0.007756441941495427,-0.009321958182110885,-0.014766384940517336],[0.019971449937034633,-0.010854669422729783,0.0738051720904444,0.018431223403353347,0.02197485484561834,0.026459798466949437,0.04226259769748215],[0.011832397379357587,-0.006516166916139884,0.018431223403353347,0.05387544901751247,-0.0011494163158381212,-0.0013668188450584719,-0.00183411403217745],[0.014005899176115414,-0.007756441941495427,0.02197485484561834,-0.0011494163158381212,0.05578937275638582,0.02287595570282213,0.03639096182198164],[0.016915449859391935,-0.009321958182110885,0.026459798466949437,-0.0013668188450584719,0.02287595570282213,0.07256461870866007,0.01532966755701006],[0.027519015558693134,-0.014766384940517336,0.04226259769748215,-0.00183411403217745,0.03639096182198164,0.01532966755701006,0.13731598522806654]]}}}
`;
