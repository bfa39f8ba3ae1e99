var total = 0;
for (let i = 0; i < 4; i = i + 1) {
  total = total + i;
}
log(total);
var j = 0;
while (j < 3) {
  let doubled = j * 2;
  total = total + doubled;
  j = j + 1;
}
log(total);
