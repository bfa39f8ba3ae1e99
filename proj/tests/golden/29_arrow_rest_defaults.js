var collect = (first = 0, ...rest) => first + rest.length;
log(collect());
log(collect(5));
log(collect(5, "a", "b", "c"));
var scale = (xs, factor = 2) => {
  var out = [];
  var i = 0;
  while (i < xs.length) {
    out.push(xs[i] * factor);
    i = i + 1;
  }
  return out;
};
log(scale([1, 2, 3]).join(","));
log(scale([1, 2], 10).join(","));
