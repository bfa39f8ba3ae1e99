var flatten2 = (pairsList) => {
  var out = [];
  var i = 0;
  while (i < pairsList.length) {
    out = out.concat(pairsList[i]);
    i = i + 1;
  }
  return out;
};
var data = [[1, 2], [3], [4, 5]];
var flat = flatten2(data);
log(flat.join(","));
log(flat.slice(1, 3).join(","));
var padded = [0, ...flat.slice(0, 2), 9];
log(padded.join(","));
