"""Series coefficients at the transition line.

Generated by ``tools/gen_coeffs.py``; do not edit by hand.  Each entry is
``(numerator, denominator, power)`` and represents
``sum(numerator[i] * r**i) / (denominator * r**power)`` with
``r = sqrt(2y - 1)`` for ``A`` and ``r = sqrt(2x + 1)`` for ``B``, ``C``, ``D``.
"""

# A[i] is a_{i + 1}
A = (
    ([0, -1], 1, 0),
    ([1, 0, 3], 6, 2),
    ([2, 0, 3], 36, 5),
    ([20, 0, 45, 0, 27], 540, 8),
    ([140, 0, 420, 0, 423, 0, 144], 4320, 11),
    ([1120, 0, 4200, 0, 5859, 0, 3591, 0, 810], 34020, 14),
    ([200200, 0, 900900, 0, 1600830, 0, 1397655, 0, 594864, 0, 97200], 5443200, 17),
    ([17920, 0, 94080, 0, 202860, 0, 229005, 0, 141831, 0, 45198, 0, 5670], 408240, 20),
    ([129329200, 0, 775975200, 0, 1966484520, 0, 2718916200, 0, 2203793163, 0, 1039005792, 0, 260418240, 0, 26127360], 2351462400, 23),
    ([216832000, 0, 1463616000, 0, 4261118400, 0, 6967976400, 0, 6971437935, 0, 4344413535, 0, 1632251412, 0, 333189450, 0, 27556200], 3031182000, 26),
    ([208220012000, 0, 1561650090000, 0, 5134705495920, 0, 9690106706280, 0, 11528731444230, 0, 8926982829765, 0, 4469991638112, 0, 1382328563616, 0, 235879672320, 0, 16460236800], 2172751257600, 29),
    ([93277184000, 0, 769536768000, 0, 2819802585600, 0, 6030610185600, 0, 8313476551380, 0, 7691215957425, 0, 4812532836111, 0, 1997265354084, 0, 520802469720, 0, 75810124260, 0, 4546773000], 709296588000, 32),
)

# B[i] is b_{i + 1}
B = (
    ([0, 1], 1, 0),
    ([-1, 0, 3], 6, 2),
    ([-2, 0, 3], 36, 5),
    ([-20, 0, 45, 0, -27], 540, 8),
    ([-140, 0, 420, 0, -423, 0, 144], 4320, 11),
    ([-1120, 0, 4200, 0, -5859, 0, 3591, 0, -810], 34020, 14),
    ([-200200, 0, 900900, 0, -1600830, 0, 1397655, 0, -594864, 0, 97200], 5443200, 17),
    ([-17920, 0, 94080, 0, -202860, 0, 229005, 0, -141831, 0, 45198, 0, -5670], 408240, 20),
    ([-129329200, 0, 775975200, 0, -1966484520, 0, 2718916200, 0, -2203793163, 0, 1039005792, 0, -260418240, 0, 26127360], 2351462400, 23),
    ([-216832000, 0, 1463616000, 0, -4261118400, 0, 6967976400, 0, -6971437935, 0, 4344413535, 0, -1632251412, 0, 333189450, 0, -27556200], 3031182000, 26),
    ([-208220012000, 0, 1561650090000, 0, -5134705495920, 0, 9690106706280, 0, -11528731444230, 0, 8926982829765, 0, -4469991638112, 0, 1382328563616, 0, -235879672320, 0, 16460236800], 2172751257600, 29),
    ([-93277184000, 0, 769536768000, 0, -2819802585600, 0, 6030610185600, 0, -8313476551380, 0, 7691215957425, 0, -4812532836111, 0, 1997265354084, 0, -520802469720, 0, 75810124260, 0, -4546773000], 709296588000, 32),
)

# C[i] is c_{i + 0}
C = (
    ([1], 1, 0),
    ([1, 0, -3], 6, 3),
    ([5, 0, -12, 0, 9], 24, 6),
    ([625, 0, -1845, 0, 1863, 0, -675], 2160, 9),
    ([1465, 0, -5304, 0, 7146, 0, -4248, 0, 945], 3456, 12),
    ([465535, 0, -2013585, 0, 3427830, 0, -2856546, 0, 1155627, 0, -178605], 725760, 15),
    ([6171025, 0, -31140900, 0, 64295775, 0, -69166440, 0, 40561803, 0, -12125700, 0, 1403325], 6220800, 18),
    ([81431525, 0, -470344245, 0, 1143306045, 0, -1509430293, 0, 1161395847, 0, -515548071, 0, 120137175, 0, -10945935], 52254720, 21),
    ([10355547125, 0, -67422658800, 0, 188726553540, 0, -295549566480, 0, 281763135630, 0, -166205246544, 0, 58554698148, 0, -11043416880, 0, 820945125], 4180377600, 24),
    ([9868801702375, 0, -71538757307325, 0, 226705666225500, 0, -410946837077700, 0, 467649165985650, 0, -344498348435670, 0, 162931352015916, 0, -47103771993300, 0, 7393274495775, 0, -460550215125], 2483144294400, 27),
    ([40603253565875, 0, -324400135359300, 0, 1148322652490475, 0, -2365522768057680, 0, 3129882337948590, 0, -2766976438160088, 0, 1645092570078342, 0, -643803564728016, 0, 156586986504495, 0, -20898583195140, 0, 1113694156575], 6320730931200, 30),
    ([40467024178706125, 0, -353346560607665625, 0, 1382081313713475375, 0, -3189471239126247075, 0, 4811830629411856050, 0, -4965316643442445290, 0, 3559168148157366030, 0, -1760762217816399798, 0, 583715583571032081, 0, -121772204356854285, 0, 14057676714445875, 0, -651511081596375], 3873705099264000, 33),
    ([854800288634166875, 0, -8099378826622083000, 0, 34693835277663812250, 0, -88671421716278801400, 0, 150253442679784769325, 0, -177312625440432174000, 0, 148863627291058980300, 0, -89145583816318389360, 0, 37537010411613143301, 0, -10735015237782802200, 0, 1950761969119395450, 0, -197521594268607000, 0, 8068714164385875], 50060188975104000, 36),
)

# D[i] is d_{i + 0}
D = (
    ([1, 0, -3], 6, 3),
    ([7, 0, -15, 0, 9], 36, 6),
    ([830, 0, -2205, 0, 1917, 0, -540], 3240, 9),
    ([2330, 0, -7710, 0, 9261, 0, -4698, 0, 810], 6480, 12),
    ([95228, 0, -381360, 0, 591507, 0, -438165, 0, 150984, 0, -18144], 181440, 15),
    ([2409050, 0, -11369925, 0, 21709485, 0, -21255885, 0, 11073267, 0, -2821230, 0, 255150], 3061800, 18),
    ([39276200, 0, -213857700, 0, 485973810, 0, -593130195, 0, 415312191, 0, -163829628, 0, 32587920, 0, -2332800], 32659200, 21),
    ([18277000, 0, -112887600, 0, 297838548, 0, -436001580, 0, 384287733, 0, -206353980, 0, 64657116, 0, -10429560, 0, 612360], 9797760, 24),
    ([20443712366000, 0, -141307987590000, 0, 424805883301800, 0, -725840751913200, 0, 772229389384035, 0, -526083694083585, 0, 226625680966608, 0, -58331119524480, 0, 7846872019200, 0, -387991296000], 6983843328000, 27),
    ([590307086600, 0, -4516095853500, 0, 15243943695750, 0, -29792346039225, 0, 37162390768965, 0, -30723150555405, 0, 16899523555761, 0, -6027938529228, 0, 1306793604780, 0, -149793206850, 0, 6365482200], 127309644000, 30),
    ([1254367500495200, 0, -10525154504264400, 0, 39423889481296320, 0, -86765073240966120, 0, 124208571575574486, 0, -120861414343735065, 0, 81043795131556257, 0, -37111541665177980, 0, 11221784750483424, 0, -2089073823123456, 0, 207552534174720, 0, -7703390822400], 169474598092800, 33),
    ([1518227841130000, 0, -13865529287610000, 0, 57079362420580500, 0, -139720236603948000, 0, 225822732500400750, 0, -252922506605618850, 0, 200288672908829505, 0, -112243862958457230, 0, 43771264478848998, 0, -11426583533685840, 0, 1855110460918950, 0, -161971347951000, 0, 5319724410000], 127673385840000, 36),
)
