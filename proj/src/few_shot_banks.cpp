#include "entqa/few_shot_banks.hpp"

#include <array>

namespace entqa {
namespace {

struct Row {
  DatasetId dataset;
  BankKey key;
  const char* question;
  const char* answers;  // "/"-separated, as printed
};

// clang-format off
constexpr Row kRows[] = {
    {DatasetId::nq, BankKey::DATE, R"(when was ye rishta kya kehlata hai started)",
     R"(January 12, 2009/Jan 2009/2009/Jan 12, 2009/Jan 12th, 2009/January 2009/12th January 2009/12 January, 2009)"},
    {DatasetId::nq, BankKey::DATE, R"(when is sharknado 6 going to be released)",
     R"(August 19, 2018/2018/August 2018/Aug 2018/August 19th, 2018/19 August 2018/19 Aug 2018)"},
    {DatasetId::nq, BankKey::DATE, R"(when was the last time tampa bay was hit by a hurricane?)",
     R"(1921/1920s/early 1920s/in early 1920s/Oct 1921/October 1921)"},
    {DatasetId::nq, BankKey::DATE, R"(when did mutiny on the bounty take place?)",
     R"(28 April 1789/1789/April 1789/Apr 1789/April 28th, 1789/April 28, 1789/28th April, 1789/late 1700s)"},
    {DatasetId::nq, BankKey::DATE, R"(game of thrones season 7 release date wiki)",
     R"(July 16, 2017/July 16th, 2017/2017/July 2017/Jul 2017/Jul 16 2017)"},
    {DatasetId::nq, BankKey::DATE, R"(On what date did India gain its independence?)",
     R"(15 August 1947/1947/Aug 1947/August 1947/August 15 1947/August 15th 1947/Aug 15, 1947)"},
    {DatasetId::nq, BankKey::DATE, R"(When did De Braose die?)",
     R"(1211/early 1200s)"},
    {DatasetId::nq, BankKey::DATE, R"(when did the tv show star trek start?)",
     R"(September 8, 1966/September 8th, 1966/1966/Sep 8, 1966/Sep 8th, 1966/September, 1966/Sep, 1966)"},
    {DatasetId::nq, BankKey::CARDINAL, R"(How many physicians did Namibia have in 2002?)",
     R"(598/almost 600/approximately 600/five hundred ninety eight/approx. 600/almost 600)"},
    {DatasetId::nq, BankKey::CARDINAL, R"(what's the population of fargo north dakota)",
     R"(120,762/one hundred twenty thousand, seven hundred sixty-two/about 120,000/120762/about one hudred twenty thousand)"},
    {DatasetId::nq, BankKey::CARDINAL, R"(How many miles long is Metrorail?)",
     R"(24.4/24.4 miles/24.4 miles long/about 24 miles/approximately 24 miles/24.4 mi)"},
    {DatasetId::nq, BankKey::CARDINAL, R"(how many times chennai super kings win in ipl)",
     R"(91/ninety-one/91 times/ninety-one times/over 90 times)"},
    {DatasetId::nq, BankKey::CARDINAL, R"(How many of the Roman military were involved in the Battle of Allia River?)",
     R"(15,000 troops/fifteen thousands/fifteen thousands troops/15000/15,000/About 15,000)"},
    {DatasetId::nq, BankKey::CARDINAL, R"(What is the highest street number in the Bronx?)",
     R"(263/two hundreds sixty-three)"},
    {DatasetId::nq, BankKey::CARDINAL, R"(how many cards are in the game loteria)",
     R"(54/fifty-four/fifty-four cards/54 cards/54 in total)"},
    {DatasetId::nq, BankKey::CARDINAL, R"(How many died trying to defend the province in Kaliningrad?)",
     R"(300,000/three hundred thousands/about 300,000/approximately 300,000/300000)"},
    {DatasetId::nq, BankKey::QUANTITY, R"(How tall was Napoleon in centimeters?)",
     R"(168 cm/1.68m/1.68 m/1.68 meters/168 centimeters/5.5 inches/5ft 6 inches/5ft 6 in/5feet 6 in/5feet 6 inches)"},
    {DatasetId::nq, BankKey::QUANTITY, R"(How tall was John?)",
     R"(5 ft 5 in/5 feet 5 inches/165cm/1.65m/1.65 meters)"},
    {DatasetId::nq, BankKey::QUANTITY, R"(How large is Lafayette Park?)",
     R"(78-acre/seventy-eight acre/about 80 acres/approximately 80 acres)"},
    {DatasetId::nq, BankKey::QUANTITY, R"(What is the range of average elevation in the Sichuan Basin?)",
     R"(2,000 to 3,500 meters/2km to 3.5km)"},
    {DatasetId::nq, BankKey::QUANTITY, R"(how fast can sound travel in a second)",
     R"(331.2 metres/approximately 331.2 meters/approximately 331.2 m/1,086 feet/1,086 feet per second/approximately 330 meters per second)"},
    {DatasetId::nq, BankKey::QUANTITY, R"(During daytime how high can the temperatures reach?)",
     R"(80 °C (176 °F)/80 degrees Celcius/80°C/80 °C/176 °F/176 degrees Fahrenheit)"},
    {DatasetId::nq, BankKey::QUANTITY, R"(how far is beaumont texas from the ocean)",
     R"(30 miles/30 mi/thirty miles/30 miles away/about 30 miles)"},
    {DatasetId::nq, BankKey::QUANTITY, R"(How fast was the processor on the new Macintosh llfx?)",
     R"(40 MHz/40 Mega-Hz/40 MegaHertz/forty MHz/40 MHz fast)"},
    {DatasetId::nq, BankKey::MONEY, R"(How much in deposits did account holders withdraw from IndyMac in late June 2008?)",
     R"($1.55 billion/1.55 billion dollars/approximately $1.6 billion/around $1.6 billion/approximately 1.6 billion dollars)"},
    {DatasetId::nq, BankKey::MONEY, R"(How much revenue did Apple announce for Q2 2007?)",
     R"($5.2 billion/5.2 billion dollars/approximately $5 billion/approximately $5.2 billion)"},
    {DatasetId::nq, BankKey::MONEY, R"(how much did the new tappan zee bridge cost)",
     R"($3.9 billion/3.9 billion dollars/approximately $4 billion)"},
    {DatasetId::nq, BankKey::MONEY, R"(how much money does the iditarod winner get)",
     R"($69,000/69,000 dollars/about $70,000)"},
    {DatasetId::nq, BankKey::MONEY, R"(In 2014, how much research funding did Northwestern receive?)",
     R"($550 million/550 million dollars/about $550 million)"},
    {DatasetId::nq, BankKey::MONEY, R"(how much interest does the uk pay on its national debt)",
     R"(PS43 billion/£43 billion/43 billion pounds/forty-three billion pounds)"},
    {DatasetId::nq, BankKey::MONEY, R"(What was reportedly the high value of of loot that the Ganj-i-Sawai had?)",
     R"(£600,000/600,000 pounds/approximately 600,000 pounds/approximately £600,000/about £600,000)"},
    {DatasetId::nq, BankKey::MONEY, R"(What was the price tag for the private jet Schwarzenegger bought in 1997?)",
     R"($38 million/38 million dollars/about $38 million)"},
    {DatasetId::nq, BankKey::PERCENT, R"(Today, Mexico accounts for what percentage of Mennonites in Latin America?)",
     R"(42%/42 percents/forty-two percent/about 42%)"},
    {DatasetId::nq, BankKey::PERCENT, R"(who owns 50 percent of the worlds wealth)",
     R"(the top 1%/top 1%/1%/one percent/the top one percent)"},
    {DatasetId::nq, BankKey::PERCENT, R"(how much of the world's maple syrup does canada produce)",
     R"(80 percent/80%/around 80%/four-fifth)"},
    {DatasetId::nq, BankKey::PERCENT, R"(what is the alcohol content of red stripe beer)",
     R"(4.7%/about 4.7%/about 5%/approximately 5%)"},
    {DatasetId::nq, BankKey::PERCENT, R"(how much of canada's gdp is oil)",
     R"(2.9%/almost 3%/about 3%)"},
    {DatasetId::nq, BankKey::PERCENT, R"(What percentage of Australia's cotton crop was GM in 2009?)",
     R"(95%/95 percent/ninety-five percent/around 95%/almost 95%)"},
    {DatasetId::nq, BankKey::PERCENT, R"(what is the highest unemployment rate ever in the united states)",
     R"(25%/one quarter/almost one quarter/almost 25%/25 percent)"},
    {DatasetId::nq, BankKey::PERCENT, R"(How many women at BYU do missionary work?)",
     R"(33 percent/33%/one-third/about one-third/more than 30%)"},
    {DatasetId::nq, BankKey::TIME, R"(how long is the movie son of god)",
     R"(138 minutes/2hrs and 18 mins/2hrs and 18 minutes/about 140 mins/138 mins)"},
    {DatasetId::nq, BankKey::TIME, R"(how long is the all i have show)",
     R"(two hours/2 hrs/2 hours/two hrs/120 minutes/120 mins)"},
    {DatasetId::nq, BankKey::TIME, R"(how long is a wwe nxt live event)",
     R"(50-51 minutes/about 50 mins/between 50-51 minutes long/almost 51 mins long)"},
    {DatasetId::nq, BankKey::TIME, R"(what is the running time of the last jedi)",
     R"(152 minutes/2 hrs 32 mins/2 hours 32 minutes/152 mins/about 2.5 hrs/about 2.5 hours)"},
    {DatasetId::nq, BankKey::TIME, R"(when is the show this is us on tv)",
     R"(9pm/nine o'clock/at 9 o'clock/21:00)"},
    {DatasetId::nq, BankKey::TIME, R"(when does a baby take their first breath)",
     R"(about 10 seconds after delivery/10 seconds/10 secs/about 10 secs)"},
    {DatasetId::nq, BankKey::TIME, R"(how long is an episode of once upon a time)",
     R"(43 minutes/43 mins/almost 45 minutes/forty-three mins/forty-three minutes)"},
    {DatasetId::nq, BankKey::TIME, R"(How long before wake time is the lowest temperature reached?)",
     R"(two hours/2 hours/2 hrs/two hrs/about 2 hours before)"},
    {DatasetId::nq, BankKey::PERSON, R"(who plays the bad guy in fifth element)",
     R"(Gary Oldman/Gary L. Oldman/Gary Leonard Oldman/Gary/Oldman)"},
    {DatasetId::nq, BankKey::PERSON, R"(who does tess end up with on mcleods daughters)",
     R"(Nick/Ryan/Nick Ryan)"},
    {DatasetId::nq, BankKey::PERSON, R"(who played mario in the super mario movie)",
     R"(Bob Hoskins/Hoskins/Robert Hoskins/Robert William Hoskins/Robert W. Hoskins)"},
    {DatasetId::nq, BankKey::PERSON, R"(who holds the record for eating hot dogs)",
     R"(Takeru Kobayashi/Kobayashi/Takeru "Tsunami" Kobayashi/Kobayashi Takeru)"},
    {DatasetId::nq, BankKey::PERSON, R"(who has played chad dimera on days of our lives)",
     R"(Billy Flynn/Casey Jon Deidrick/William Flynn/Casey Deidrick/Casey J. Deidrick)"},
    {DatasetId::nq, BankKey::PERSON, R"(who ran the fastest 40 time in nfl history)",
     R"(Bo Jackson/Vincent Edward "Bo" Jackson/Jackson)"},
    {DatasetId::nq, BankKey::PERSON, R"(who does vin diesel play in fast and furious 6)",
     R"(Dominic Toretto/Torreto/Dominic "Dom" Toretto)"},
    {DatasetId::nq, BankKey::PERSON, R"(who played hey girl on have gun will travel)",
     R"(Lisa Lu/Lisa Lu Yan/Lu)"},
    {DatasetId::nq, BankKey::GPE, R"(town replaced by kampala as ugandan capital in 1962)",
     R"(Entebbe/Entebbe, Uganda)"},
    {DatasetId::nq, BankKey::GPE, R"(which is the largest forest state in india)",
     R"(Madhya Pradesh/Madhya Pradesh, India)"},
    {DatasetId::nq, BankKey::GPE, R"(ranchi is capital of which state in india)",
     R"(Jharkhand/Jharkhand, India)"},
    {DatasetId::nq, BankKey::GPE, R"(where did kate and prince william get engaged)",
     R"(Kenya/Rutundu, Kenya/Rutundu/East Africa)"},
    {DatasetId::nq, BankKey::GPE, R"(where does tv show private eyes take place)",
     R"(Toronto/Toronto, Canada/Toronto, Ontario/Ontario/Toronto, Ontario, Canada)"},
    {DatasetId::nq, BankKey::GPE, R"(where is the netflix show the travelers filmed)",
     R"(Vancouver, BC, Canada/Vancouver, BC/Vancouver, Canada/Canada/BC, Canada/Vancouver)"},
    {DatasetId::nq, BankKey::GPE, R"(where is rhodochrosite found in the united states)",
     R"(Colorado/Colorado, USA/Colorado, United States/Colorado state)"},
    {DatasetId::nq, BankKey::GPE, R"(where was the ncaa football championship game played 2018)",
     R"(Atlanta, Georgia/Georgia/Mercedes-Benz Stadium/Mercedes-Benz Stadium in Atlanta, Georgia/Atlanta)"},
    {DatasetId::nq, BankKey::ORG, R"(who has the most world series wins in mlb history)",
     R"(New York Yankees/Yankees)"},
    {DatasetId::nq, BankKey::ORG, R"(who did the vikings play in their first playoff game)",
     R"(Atlanta/Atlanta Falcons/Falcons)"},
    {DatasetId::nq, BankKey::ORG, R"(who was the publisher of brave new world)",
     R"(Chatto & Windus/Chatto and Windus/Chatto&Windus)"},
    {DatasetId::nq, BankKey::ORG, R"(who makes the fastest car in the world)",
     R"(Bugatti/Bugatti automobiles/Bugatti automobiles S.A.S.)"},
    {DatasetId::nq, BankKey::ORG, R"(where can you find naruto shippuden in english)",
     R"(Neon Alley/on Neon Alley/in Neon Alley)"},
    {DatasetId::nq, BankKey::ORG, R"(where is nanny mcphee and the big bang filmed)",
     R"(University of London/Dunsfold Aerodrome/various London roads/Hambleden in Buckinghamshire/London/UK/Buckinghamshire)"},
    {DatasetId::nq, BankKey::ORG, R"(who has the most shops in the uk)",
     R"(Tesco/Tesco plc)"},
    {DatasetId::nq, BankKey::ORG, R"(where does the majority of new york city's drinking water come from)",
     R"(The Delaware Aqueduct/The Catskill Aqueduct/Catskill/Delaware)"},
    {DatasetId::nq, BankKey::other, R"(where does the word coffee originally come from)",
     R"(the Arabic qahwah/Arabic)"},
    {DatasetId::nq, BankKey::other, R"(where can united states citizens find their civil liberties listed)",
     R"(Bill of Rights/in Bill of Rights)"},
    {DatasetId::nq, BankKey::other, R"(when was the salary cap introduced to the nhl)",
     R"(During the Great Depression/Great Depression)"},
    {DatasetId::nq, BankKey::other, R"(what kind of car does jay gatsby drive)",
     R"(Rolls Royce/Rolls-Royce/Rolls-Royce 40)"},
    {DatasetId::nq, BankKey::other, R"(elton john's first number one hit song)",
     R"("Crocodile Rock"/Crocodile Rock)"},
    {DatasetId::nq, BankKey::other, R"(where does easy jet fly from in uk)",
     R"(London Luton Airport/Luton Airport/London Luton)"},
    {DatasetId::nq, BankKey::other, R"(what is the prison island in san francisco bay)",
     R"(Alcatraz Island/Island Alcatraz)"},
    {DatasetId::nq, BankKey::other, R"(what is the architectural style of the hagia sophia)",
     R"(Byzantine/Byzantine empire|)"},
    {DatasetId::nq, BankKey::unknown, R"(where did lucy jones come in the eurovision 2017)",
     R"(15th place/15th/fifteenth/fifteenth place)"},
    {DatasetId::nq, BankKey::unknown, R"(How many physicians did Namibia have in 2002?)",
     R"(598/almost 600/approximately 600/five hundred ninety eight/approx. 600/almost 600)"},
    {DatasetId::nq, BankKey::unknown, R"(how much of canada's gdp is oil)",
     R"(2.9%/almost 3%/about 3%)"},
    {DatasetId::nq, BankKey::unknown, R"(How tall was John?)",
     R"(5 ft 5 in/5 feet 5 inches/165cm/1.65m/1.65 meters)"},
    {DatasetId::nq, BankKey::unknown, R"(how much money does the iditarod winner get)",
     R"($69,000/69,000 dollars/about $70,000)"},
    {DatasetId::nq, BankKey::unknown, R"(who was the publisher of brave new world)",
     R"(Chatto & Windus/Chatto and Windus/Chatto&Windus)"},
    {DatasetId::nq, BankKey::unknown, R"(where did kate and prince william get engaged)",
     R"(Kenya/Rutundu, Kenya/Rutundu/East Africa)"},
    {DatasetId::nq, BankKey::unknown, R"(On what date did India gain its independence?)",
     R"(15 August 1947/1947/Aug 1947/August 1947/August 15 1947/August 15th 1947/Aug 15, 1947)"},
    {DatasetId::tq, BankKey::DATE, R"(The first Transit of Venus in the 21st century took place on 8 June 2004. What is the date of the next one?)",
     R"(June 2012/2012 June 06/2012/June 6th, 2012/6 June 2012)"},
    {DatasetId::tq, BankKey::DATE, R"(Forefathers Day is celebrated in the US on which date?)",
     R"(21 December/21th, December/December 21/Dec 21/December 21th)"},
    {DatasetId::tq, BankKey::DATE, R"(In what year did Roald Amundsen reach the South Pole for the first time?)",
     R"(1911/14 December 1911/December 1911/December 14th, 1911/Dec 14th, 1911)"},
    {DatasetId::tq, BankKey::DATE, R"(State of Israel is proclaimed.)",
     R"(1948/May 14, 1948/May, 1948/May 14th, 1948/14 May 1948)"},
    {DatasetId::tq, BankKey::DATE, R"(An eruption in Iceland, known as the Laki eruption, where lava erupted from a 17-mile crack rather than from a standard volcano and lava tubes extended lava travel to more than 50 miles, devastated the country killing 80% of livestock, caused starvation for over 20% of the population, and affected areas as far as Africa and Asia. When was this?)",
     R"(1783-4/1783-1784/from 1783 to 1784)"},
    {DatasetId::tq, BankKey::DATE, R"(In what year did 'Prohibition' officially end in America?)",
     R"(1933/December 5, 1933/Dec 5, 1933/December of 1933/December 5th, 1933)"},
    {DatasetId::tq, BankKey::DATE, R"(Which date is Groundhog Day in the USA?)",
     R"(February 2nd/Feb 2nd/February 2/Feb 2)"},
    {DatasetId::tq, BankKey::DATE, R"(In which year was 'The Boston Tea Party'?)",
     R"(1773/December 16, 1773/December 1773/Dec 1773/Dec 16th, 1773/16 December 1773)"},
    {DatasetId::tq, BankKey::CARDINAL, R"(How many kilometres long is the walk - the longest race in men's athletics?)",
     R"(50/50km/fifty/fifty-kilometres)"},
    {DatasetId::tq, BankKey::CARDINAL, R"("How many leagues did Captain Nemo travel ""under the sea""?")",
     R"(20,000/20000/twenty thousand/twenty thousand leagues)"},
    {DatasetId::tq, BankKey::CARDINAL, R"(What is the maximum number of characters in a single SMS (text) message?)",
     R"(160/160 characters/one hundred sixty)"},
    {DatasetId::tq, BankKey::CARDINAL, R"(To the nearest 1000, what is the crowd capacity on Centre Court at Wimbiedon?)",
     R"(15,000/approximately 15,000/around 15,000/14,979/fifteen-thousands)"},
    {DatasetId::tq, BankKey::CARDINAL, R"(It's census time again. How many people did the US have in 1790 when the first census was taken?)",
     R"(4 million. 3,929,326, to be exact/3,929,326/around 4 million/4 million/almost 4,000,000)"},
    {DatasetId::tq, BankKey::CARDINAL, R"(On a standard dartboard, which number lies opposite 6?)",
     R"(11/eleven)"},
    {DatasetId::tq, BankKey::CARDINAL, R"(In the Washington Irving short story, for how many years did Rip van Winkle sleep in the Catskill Mountains?)",
     R"(Twenty/20/Twenty years/20 year)"},
    {DatasetId::tq, BankKey::CARDINAL, R"(How long, to the nearest mile, is an Olympic marathon?)",
     R"(26/twenty six/approximately 26 miles/26 miles)"},
    {DatasetId::tq, BankKey::QUANTITY, R"(How tall is the monument 'Nelson's Column' in feet and inches?)",
     R"(170 feet and two inches/170 feet and 2 inches/170 ft 2 in/one-hundred seventy feet and two inches)"},
    {DatasetId::tq, BankKey::QUANTITY, R"(At which distance did Sebastian Coe win his Olympic gold medal in the Moscow games)",
     R"(Fifteen hundred metres/1,500 m/1.5km/1.5 kilometres/one point five km)"},
    {DatasetId::tq, BankKey::QUANTITY, R"(How long is a volleyball court in feet?)",
     R"(60 feet/sixty feet)"},
    {DatasetId::tq, BankKey::QUANTITY, R"(In the Olympic shot put competition, what is the weight of the women's shot?)",
     R"(4 kilograms (8.82 lb)/4 kg/8.82 lb/4 kilograms/four kilograms/8.82 pounds)"},
    {DatasetId::tq, BankKey::QUANTITY, R"(What is the last event in the decathlon)",
     R"(Fifteen hundred metres/1,500 metres/1.5km/0.93 miles/1.5 kilometres)"},
    {DatasetId::tq, BankKey::QUANTITY, R"(According to Dart Board Regulations, how high should the centre of the bullseye be from the floor in feet and inches?)",
     R"(5 feet 8 inches/5 ft 8 in/five feet eight inches)"},
    {DatasetId::tq, BankKey::QUANTITY, R"(To a thousand square miles, what is the area of New Jersey?)",
     R"(7,417 square miles/approximately 7,400 square miles/seven-thousands four-hundreds and seventeen square miles)"},
    {DatasetId::tq, BankKey::QUANTITY, R"("In soccer, how far does ""the wall"" of players have to be from the spot where a free kick is to be taken?")",
     R"(10 yards/9.144 meters/ten yards/9.144 m/30 feet/30 ft/360 inches)"},
    {DatasetId::tq, BankKey::MONEY, R"(If after spending 10% of your money, you have $180 left, how much did you start with?)",
     R"($200/two-hundred dollars/200 dollars)"},
    {DatasetId::tq, BankKey::MONEY, R"(How much did Jerry Seinfeld reputedly turn down per episode when he refused to continue Seinfeld?)",
     R"($5 million/5,000,000 dollars/five million dollars/$5,000,000)"},
    {DatasetId::tq, BankKey::MONEY, R"(In dollars, how much did the 1997 film Titanic gross in its opening weekend in America?)",
     R"($28,638,131/28,638,131 dollars/approximately $29 million/almost $29,000,000)"},
    {DatasetId::tq, BankKey::MONEY, R"(How much does it cost to buy Trafalgar Square on a monopoly board?)",
     R"(£240/240 pounds/two-hundred forty pounds)"},
    {DatasetId::tq, BankKey::MONEY, R"(At 2013 what compensation had UK banks paid/set aside for the misselling of PPI (Payment Protection Insurance)?)",
     R"(£18.4billion/18.4 billion pounds/£18,400,000,000/18,400,000,000 pounds)"},
    {DatasetId::tq, BankKey::MONEY, R"(It was announced in 2015 that Alexander Hamilton would be replaced on (What?), also called a sawbuck, alluding to the symbol X?)",
     R"($10 bill/$10/$10 buck/ten bucks/ten dollars)"},
    {DatasetId::tq, BankKey::MONEY, R"(What does a colour TV licence cost?)",
     R"(£145.50/145.50 pounds/approximately £145/almost £146)"},
    {DatasetId::tq, BankKey::MONEY, R"(In dollars, how much did the USA pay Russia for Alaskan territory in 1867?)",
     R"($7,200,000/$7.2 million/7.2 million dollars/7,200,000)"},
    {DatasetId::tq, BankKey::PERCENT, R"(An Ipsos MORI survey carried out this year showed politicians to have the lowest level of trust of any occupation in the  U.K. What percentage of people trusted politicians in general to tell the truth. ( accept within + or - 5 % ) ?)",
     R"(18%/eighteen percents/around 20%/over 15%)"},
    {DatasetId::tq, BankKey::PERCENT, R"((Up to) what degree of Neanderthal DNA is found in modern non-African people?)",
     R"(4%/four percents/4 percents/four/up to 4%)"},
    {DatasetId::tq, BankKey::PERCENT, R"(In the United States, if liquor is defined as 80 proof, what is the percentage of alcohol by volume?)",
     R"(40%/fourty percents/40 percents/40/two-fifth)"},
    {DatasetId::tq, BankKey::PERCENT, R"(Seas and oceans make up roughly what proportion of the earth's surface?)",
     R"(70%/seventy percents/approximately 70%/around 70%)"},
    {DatasetId::tq, BankKey::PERCENT, R"(Twelve three-hundredths (12/300) expresssed as a percentage is?)",
     R"(4%/four/4/four percent/one twenty-fifth)"},
    {DatasetId::tq, BankKey::PERCENT, R"(What percentage of all Rolls-Royce Motor cars ever built are still roadworthy?)",
     R"(Over 60%/Over three-fifth/Over sixty percent/more than 60%/above 60%)"},
    {DatasetId::tq, BankKey::PERCENT, R"(The human brain represents roughly what percentage of the body's resting metabolic rate (energy expended)?)",
     R"(20%/one-fifth/twenty percent/approximately 20%)"},
    {DatasetId::tq, BankKey::PERCENT, R"(Approximately what percentage of Americans have appeared on television? 3%, 11% or 25%?)",
     R"(25%/one quarter/twenty-five percent/approximately 25%)"},
    {DatasetId::tq, BankKey::TIME, R"(How long is the rest period between rounds in a professional boxing match?)",
     R"(60 seconds (one minute)/60 seconds/60 secs/one minute/one min./sixty seconds)"},
    {DatasetId::tq, BankKey::TIME, R"(How long is a dog watch at sea?)",
     R"(Two hours/2 hrs/2 hours/120 mins/120 minutes)"},
    {DatasetId::tq, BankKey::TIME, R"(A snowflake takes approximately how long to fall fom sky to ground?)",
     R"(One hour/1 hours/approximately 1 hours/60 minutes/60 min)"},
    {DatasetId::tq, BankKey::TIME, R"(How long does a golfer get to find a lost ball)",
     R"(Five minutes/5 minutes/5 mins/five mins)"},
    {DatasetId::tq, BankKey::TIME, R"(How long is allowed between serves in an APT tennis match i.e. between 1st and 2nd serve?)",
     R"(20 SECONDS/twenty seconds/20 secs/20 seconds)"},
    {DatasetId::tq, BankKey::TIME, R"(At what time of the day is the Ceremony of the Keys held in the Tower of London?)",
     R"(10pm/ten p.m./10 p.m./ten at night/10 at night)"},
    {DatasetId::tq, BankKey::TIME, R"(Takuo Toda broke the world record for a paper plane flight, launched by hand from the ground, for what time?)",
     R"(26.1 seconds/around 26 seconds/approximately 26 secs/26.1 secs)"},
    {DatasetId::tq, BankKey::TIME, R"(Because of the speed at which the earth and the moon move relative to the sun, a total solar eclipse can never last more than how long?)",
     R"(7 minutes 31 seconds/seven minutes thirty-one seconds/7 mins 31 secs/about 7.5 minutes)"},
    {DatasetId::tq, BankKey::PERSON, R"(Which French chef created Peach Melba in 1893?)",
     R"(Auguste Escoffier/chef Auguste Escoffier/Georges Auguste Escoffier/Auguste/Escoffier)"},
    {DatasetId::tq, BankKey::PERSON, R"(Who managed England during the 1982 World Cup?)",
     R"(RON GREENWOOD/Ronald Greenwood/Greenwood)"},
    {DatasetId::tq, BankKey::PERSON, R"(Donald Pleasance, Telly Savalas and Charles Gray have all played the role of which James Bond villain?)",
     R"(Ernst Blofeld/Ernst S. Blofeld/Blofeld/Ernest)"},
    {DatasetId::tq, BankKey::PERSON, R"(What television host is married to Portia de Rossi?)",
     R"(Ellen Degeneres/Ellen Lee Degeneres/Ellen L. Degeneres/Ellen)"},
    {DatasetId::tq, BankKey::PERSON, R"(Which World Heavyweight boxing champion-was known as 'The Cinderella Man'?)",
     R"(JAMES BRADDOCK/JAMES J. BRADDOCK/James Walter Braddock)"},
    {DatasetId::tq, BankKey::PERSON, R"(In 1994 who became only the second actor to win successive Best Actor ‘Oscars’?)",
     R"(Tom Hanks/Tom Jeffrey Hanks/Tom J. Hanks/Thomas Jeffrey Hanks/Thomas J. Hanks)"},
    {DatasetId::tq, BankKey::PERSON, R"(Who was William Shakespeare's mother)",
     R"(Mary Arden/Mary Shakespeare/Mary)"},
    {DatasetId::tq, BankKey::PERSON, R"(What is the name of the top fashion designer who founder of the Fashion and Textile Museum in London?)",
     R"(Zandra Rhodes/Dame Zandra Lindsey Rhodes/Zandra Lindsey Rhodes/Zandra L. Rhodes)"},
    {DatasetId::tq, BankKey::GPE, R"(What is the capital of Namibia?)",
     R"(Windhoek/Windhoek, Namibia)"},
    {DatasetId::tq, BankKey::GPE, R"(Where was the first commercial railway line built?)",
     R"(Stockton to Darlington, UK/UK/Stockton, UK/Darlington, UK)"},
    {DatasetId::tq, BankKey::GPE, R"(What is the Capital City of Latvia?)",
     R"(Riga/Riga, Latvia)"},
    {DatasetId::tq, BankKey::GPE, R"(Which country has the same name as a state of the USA?)",
     R"(Western Georgia/Georgia)"},
    {DatasetId::tq, BankKey::GPE, R"(In which Winter Olympics city did John Curry win gold in 1976?)",
     R"(Innsbrück/InnsbruckInnsbruck, Austria)"},
    {DatasetId::tq, BankKey::GPE, R"(By area, which is the largest state in the USA?)",
     R"(Alaska/Alaska, United States/Alaska, USA)"},
    {DatasetId::tq, BankKey::GPE, R"(Previously called Ezo/Yezo/Yeso/Yesso, what is Japan's north and second-largest island?)",
     R"(Hokkaidou prefecture/Hokkaidou/Hokkaidou island)"},
    {DatasetId::tq, BankKey::GPE, R"(The St Leger is run at which English racecourse?)",
     R"(Doncaster, England/Doncaster)"},
    {DatasetId::tq, BankKey::ORG, R"(What organization won the 2012 Nobel Peace Prize?)",
     R"(The European Union/EU)"},
    {DatasetId::tq, BankKey::ORG, R"(What is the name of the bank in the UK television series ‘Dad’s Army’?)",
     R"(Swallow Bank/Mainwaring's Bank)"},
    {DatasetId::tq, BankKey::ORG, R"(Which car company made the Interceptor, ceasing production in 1976?)",
     R"(JENSEN/JENSEN Motors)"},
    {DatasetId::tq, BankKey::ORG, R"(Sam Walton founded which famous US retail chain in 1962?)",
     R"(Walmart)"},
    {DatasetId::tq, BankKey::ORG, R"(The original motto of which organisation was ‘Amidst War, Charity’?)",
     R"(Red Cross/International Committee of the Red Cross/ICRC)"},
    {DatasetId::tq, BankKey::ORG, R"(What magazine, with its iconic yellow border, was first published on Sept 22, 1888?)",
     R"(National Geographic/National Geographic magazine)"},
    {DatasetId::tq, BankKey::ORG, R"(Sony and Emirates Airlines withdrew their sponsorship in 2014 from which  global organization after ongoing corruption scandals?)",
     R"(FIFA/Fédération Internationale de Football Association /FIFA (Fédération Internationale de Football Association))"},
    {DatasetId::tq, BankKey::ORG, R"('Core' is a brand of which computer technology company?)",
     R"(Intel Corporation/Intel)"},
    {DatasetId::tq, BankKey::other, R"(The vast majority of Indonesian people adhere to what religion?)",
     R"(Islam/Islamic)"},
    {DatasetId::tq, BankKey::other, R"(The island of Feurteventura lies in which body of water?)",
     R"(Atlantic Ocean/Atlantic)"},
    {DatasetId::tq, BankKey::other, R"(Which is the longest running Broadway musical in history?)",
     R"(Phantom of the Opera/The Phantom of the Opera)"},
    {DatasetId::tq, BankKey::other, R"(What is the world’s largest natural harbour?)",
     R"(Sydney Harbour/Sydney Harbour)"},
    {DatasetId::tq, BankKey::other, R"(In World War Two, which aircraft company manufactured the Stuka?)",
     R"(Junkers/the junkers aircraft company)"},
    {DatasetId::tq, BankKey::other, R"(What was first framed in 1864 and ratified in 1906 concerning the conduct of warfare?)",
     R"(Geneva Convention)"},
    {DatasetId::tq, BankKey::other, R"(What was the first US Federal statute to limit cartels and monopolies, passed in 1890, that still forms the basis for most antitrust litigation by the United States federal government?)",
     R"(The Sherman Act)"},
    {DatasetId::tq, BankKey::other, R"(Herbert Hoover and his wife Lou Henry Hoover often had public conversations in which language so that people could not eavesdrop on them?)",
     R"(Mandarin Chinese/Mandarin)"},
    {DatasetId::tq, BankKey::unknown, R"(The2012 London Olympic Games were officially known as the games of what number Olympiad?)",
     R"(30th/thirtieth/30/thirty)"},
    {DatasetId::tq, BankKey::unknown, R"(How many kilometres long is the walk - the longest race in men's athletics?)",
     R"(50/50km/fifty/fifty-kilometres)"},
    {DatasetId::tq, BankKey::unknown, R"(Twelve three-hundredths (12/300) expresssed as a percentage is?)",
     R"(4%/four/4/four percent/one twenty-fifth)"},
    {DatasetId::tq, BankKey::unknown, R"(At which distance did Sebastian Coe win his Olympic gold medal in the Moscow games)",
     R"(Fifteen hundred metres/1,500 m/1.5km/1.5 kilometres/one point five km)"},
    {DatasetId::tq, BankKey::unknown, R"(How much does it cost to buy Trafalgar Square on a monopoly board?)",
     R"(£240/240 pounds/two-hundred forty pounds)"},
    {DatasetId::tq, BankKey::unknown, R"(Which car company made the Interceptor, ceasing production in 1976?)",
     R"(JENSEN/JENSEN Motors)"},
    {DatasetId::tq, BankKey::unknown, R"(Which country has the same name as a state of the USA?)",
     R"(Western Georgia/Georgia)"},
    {DatasetId::tq, BankKey::unknown, R"(In what year did 'Prohibition' officially end in America?)",
     R"(1933/December 5, 1933/Dec 5, 1933/December of 1933/December 5th, 1933)"},
};
// clang-format on

std::vector<std::string> split_slash(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find('/', start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

FewShotBank build(DatasetId d) {
  FewShotBank bank;
  bank.dataset = d;
  for (const Row& r : kRows) {
    if (r.dataset != d) continue;
    bank.groups[static_cast<std::size_t>(r.key)].push_back({r.question, split_slash(r.answers)});
  }
  return bank;
}

}  // namespace

std::string_view to_string(DatasetId d) noexcept { return d == DatasetId::nq ? "nq" : "tq"; }

std::optional<DatasetId> parse_dataset_id(std::string_view s) noexcept {
  if (s == "nq" || s == "NQ") return DatasetId::nq;
  if (s == "tq" || s == "TQ") return DatasetId::tq;
  return std::nullopt;
}

std::string_view to_string(BankKey k) noexcept {
  static constexpr std::array<std::string_view, kBankKeyCount> kNames = {
      "DATE", "CARDINAL", "QUANTITY", "MONEY", "PERCENT", "TIME", "PERSON", "GPE", "ORG", "Other", "Unknown"};
  return kNames[static_cast<std::size_t>(k)];
}

BankKey bank_key_for(EntityType t) noexcept {
  switch (t) {
    case EntityType::DATE: return BankKey::DATE;
    case EntityType::CARDINAL: return BankKey::CARDINAL;
    case EntityType::QUANTITY: return BankKey::QUANTITY;
    case EntityType::MONEY: return BankKey::MONEY;
    case EntityType::PERCENT: return BankKey::PERCENT;
    case EntityType::TIME: return BankKey::TIME;
    case EntityType::PERSON: return BankKey::PERSON;
    case EntityType::GPE: return BankKey::GPE;
    case EntityType::ORG: return BankKey::ORG;
    case EntityType::NORP:
    case EntityType::LOC:
    case EntityType::WORK_OF_ART:
    case EntityType::FAC:
    case EntityType::PRODUCT:
    case EntityType::EVENT:
    case EntityType::LAW:
    case EntityType::LANGUAGE: return BankKey::other;
    // No ordinal bank exists; the mixed bank already carries "15th place" style rows.
    case EntityType::ORDINAL:
    case EntityType::NA: return BankKey::unknown;
  }
  return BankKey::unknown;
}

std::vector<const Exemplar*> FewShotBank::all() const {
  std::vector<const Exemplar*> out;
  for (const auto& g : groups)
    for (const auto& e : g) out.push_back(&e);
  return out;
}

const FewShotBank& builtin_bank(DatasetId d) {
  static const FewShotBank nq = build(DatasetId::nq);
  static const FewShotBank tq = build(DatasetId::tq);
  return d == DatasetId::nq ? nq : tq;
}

}  // namespace entqa
